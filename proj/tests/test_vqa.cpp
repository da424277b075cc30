// Copyright 2026 The qgeo Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qgeo/circuit.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/vqa.hpp"

namespace {

using qgeo::CircuitFamily;
using qgeo::CircuitTemplate;
using qgeo::GateKind;
using qgeo::ParameterVector;
using qgeo::RotationScheme;
using qgeo::Topology;

TEST(Vqa, HamiltonianBuilders) {
    EXPECT_EQ(qgeo::build_zz(5).size(), 1u);
    const auto ising = qgeo::build_ising(6, 0.5);
    EXPECT_EQ(ising.size(), 11u);
    EXPECT_DOUBLE_EQ(ising.terms.back().coefficient, 0.5);
    EXPECT_THROW((void)qgeo::build_zz(1), std::invalid_argument);
    EXPECT_THROW((void)qgeo::build_ising(1, 1.0), std::invalid_argument);
}

TEST(Vqa, EnergyMatchesDenseOracle) {
    const auto t = CircuitTemplate::build(4, 3, RotationScheme::RandXYZ,
                                          GateKind::SqrtISwap, Topology::All,
                                          3);
    const auto theta = qgeo::sample_parameters(t, 4);
    const auto h = qgeo::build_ising(4, 0.8);
    const oracle::Vec v = oracle::state(t, theta);
    const double expect = (v.adjoint() * oracle::hamiltonian(4, h) * v)(0).real();
    EXPECT_NEAR(qgeo::energy(t, theta, h), expect, 1e-13);

    const auto hv = qgeo::apply_hamiltonian(qgeo::prepare_state(t, theta), h);
    EXPECT_LT(oracle::max_abs_diff(oracle::to_vec(hv),
                                   oracle::hamiltonian(4, h) * v),
              1e-13);
}

TEST(Vqa, GradientMatchesCentralDifferences) {
    const double h = 1e-5;
    std::uint64_t seed = 0;
    int instances = 0;
    for (RotationScheme s :
         {RotationScheme::RandXYZ, RotationScheme::RandXYW,
          RotationScheme::FixedX, RotationScheme::FixedY,
          RotationScheme::FixedZ, RotationScheme::ZXZ}) {
        for (GateKind e :
             {GateKind::CNOT, GateKind::CPHASE, GateKind::SqrtISwap}) {
            for (Topology topo :
                 {Topology::Chain, Topology::All, Topology::Alt}) {
                const int n = 3 + static_cast<int>(seed % 3);
                const auto t = CircuitTemplate::build(n, 2, s, e, topo, ++seed);
                const auto theta = qgeo::sample_parameters(t, seed + 50);
                const auto ham = qgeo::build_ising(n, 0.7);
                const auto g = qgeo::gradient(t, theta, ham);
                for (int k = 0; k < t.parameter_count(); ++k) {
                    ParameterVector up = theta, down = theta;
                    up[k] += h;
                    down[k] -= h;
                    const double fd = (qgeo::energy(t, up, ham) -
                                       qgeo::energy(t, down, ham)) /
                                      (2 * h);
                    EXPECT_NEAR(g[k], fd, 1e-6);
                }
                ++instances;
            }
        }
    }
    EXPECT_GE(instances, 20);
}

TEST(Vqa, EnergyIsInvariantUnderGlobalPhase) {
    const auto t = CircuitTemplate::build(3, 2, RotationScheme::RandXYZ,
                                          GateKind::CNOT, Topology::Chain, 1);
    auto psi = qgeo::prepare_state(t, qgeo::sample_parameters(t, 2));
    const auto h = qgeo::build_ising(3, 1.0);
    const double e = qgeo::expectation(psi, h);
    psi.scale(std::polar(1.0, 0.9));
    EXPECT_NEAR(qgeo::expectation(psi, h), e, 1e-15);
}

TEST(Vqa, NaturalGradientSolvesFullRankSystem) {
    const auto t = CircuitTemplate::build(3, 2, RotationScheme::RandXYZ,
                                          GateKind::CNOT, Topology::Chain, 6);
    const auto theta = qgeo::sample_parameters(t, 3);
    const auto f = qgeo::compute_qfi(t, theta);
    ASSERT_EQ(qgeo::effective_dimension(qgeo::eigendecompose(f)),
              t.parameter_count());
    const auto g = qgeo::gradient(t, theta, qgeo::build_zz(3));
    const auto ng = qgeo::natural_gradient(f, g);
    const Eigen::Map<const Eigen::VectorXd> x(ng.values.data(), f.dim());
    const Eigen::Map<const Eigen::VectorXd> gv(g.values.data(), f.dim());
    EXPECT_LT((f.entries * x - gv).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Vqa, NaturalGradientDropsNullDirections) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 3, 0.25);
    const qgeo::QfiMatrix f{m};
    const qgeo::GradientVector g{{1.0, -1.0, 3.0}};
    const auto ng = qgeo::natural_gradient(f, g);
    // pinv(J/4) = (4/9) J, so every entry is 4/9 * sum(g).
    for (double v : ng.values) {
        EXPECT_NEAR(v, 3.0 * 4.0 / 9.0, 1e-12);
    }
    EXPECT_THROW((void)qgeo::natural_gradient(f, qgeo::GradientVector{{1.0}}),
                 std::invalid_argument);
}

TEST(Vqa, EnsembleStats) {
    qgeo::EnsembleStats a, b, all;
    const std::vector<double> xs = {1.0, 2.0, 4.0, 7.0, -3.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        (i < 2 ? a : b).add(xs[i]);
        all.add(xs[i]);
    }
    a.merge(b);
    EXPECT_EQ(a.count(), 5);
    EXPECT_DOUBLE_EQ(a.mean(), all.mean());
    EXPECT_DOUBLE_EQ(a.mean(), 2.2);
    EXPECT_NEAR(a.variance(), 10.96, 1e-12);
    qgeo::EnsembleStats constant;
    for (int i = 0; i < 10; ++i) {
        constant.add(0.1);
    }
    EXPECT_GE(constant.variance(), 0.0);
    EXPECT_EQ(qgeo::EnsembleStats{}.variance(), 0.0);
}

TEST(Vqa, JackknifeMatchesBruteForce) {
    qgeo::Rng rng(4);
    std::vector<double> xs(37);
    for (double &x : xs) {
        x = rng.uniform(-1.0, 2.0);
    }
    const int n = static_cast<int>(xs.size());
    std::vector<double> loo(n);
    for (int i = 0; i < n; ++i) {
        qgeo::EnsembleStats s;
        for (int j = 0; j < n; ++j) {
            if (j != i) {
                s.add(xs[j]);
            }
        }
        loo[i] = s.variance();
    }
    const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / n;
    double acc = 0.0;
    for (double v : loo) {
        acc += (v - mean) * (v - mean);
    }
    EXPECT_NEAR(qgeo::jackknife_variance_stderr(xs),
                std::sqrt((n - 1.0) / n * acc), 1e-12);
    EXPECT_EQ(qgeo::jackknife_variance_stderr(std::vector<double>{1.0}), 0.0);
}

TEST(Vqa, EnsembleVarianceIsOrderAndThreadIndependent) {
    qgeo::EnsembleExperiment exp;
    exp.family = CircuitFamily{RotationScheme::RandXYZ, GateKind::CNOT,
                               Topology::Chain, 4, 8};
    exp.hamiltonian = qgeo::build_zz(4);
    exp.num_instances = 200;
    exp.master_seed = 2024;
    const auto one = qgeo::ensemble_variance(exp);
    exp.threads = 4;
    const auto four = qgeo::ensemble_variance(exp);
    EXPECT_EQ(one.values, four.values);
    EXPECT_EQ(one.stats.variance(), four.stats.variance());
    EXPECT_EQ(one.jackknife_stderr, four.jackknife_stderr);

    // Brute force, accumulated in reverse order with two-pass variance.
    std::vector<double> vals;
    for (int i = exp.num_instances - 1; i >= 0; --i) {
        const auto t = exp.family.instance(
            qgeo::instance_structure_seed(exp.master_seed, i));
        const auto theta = qgeo::sample_parameters(
            t, qgeo::instance_parameter_seed(exp.master_seed, i));
        vals.push_back(qgeo::gradient(t, theta, exp.hamiltonian)[0]);
    }
    const double mean =
        std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
    double var = 0.0;
    for (double v : vals) {
        var += (v - mean) * (v - mean);
    }
    var /= vals.size();
    EXPECT_NEAR(one.stats.variance(), var, 1e-10 * var);
    EXPECT_NEAR(one.stats.mean(), mean, 1e-12);
}

TEST(Vqa, ASweepAtOneMatchesEnsemble) {
    const CircuitFamily fam{RotationScheme::RandXYZ, GateKind::CPHASE,
                            Topology::Chain, 3, 4};
    const auto h = qgeo::build_zz(3);
    const std::vector<double> as = {0.1, 1.0};
    const auto rows = qgeo::a_sweep(fam, as, h, 20, 5, 0, 1e-10, 2);
    ASSERT_EQ(rows.size(), 2u);
    qgeo::EnsembleExperiment exp;
    exp.family = fam;
    exp.hamiltonian = h;
    exp.num_instances = 20;
    exp.master_seed = 5;
    EXPECT_EQ(rows[1].gradient.values, qgeo::ensemble_variance(exp).values);
    EXPECT_GT(rows[1].mean_effective_dimension, 0.0);
    EXPECT_LE(rows[1].mean_effective_dimension, 12.0);
    const std::vector<double> bad = {0.0};
    EXPECT_THROW((void)qgeo::a_sweep(fam, bad, h, 20, 5),
                 std::invalid_argument);
}

TEST(Vqa, GradientVarianceSaturatesPastTheKnee) {
    qgeo::EnsembleExperiment exp;
    exp.hamiltonian = qgeo::build_zz(4);
    exp.num_instances = 500;
    exp.master_seed = 8;
    exp.family = CircuitFamily{RotationScheme::RandXYZ, GateKind::CNOT,
                               Topology::Chain, 4, 12};
    const double v1 = qgeo::ensemble_variance(exp).stats.variance();
    exp.family.num_layers = 24;
    const double v2 = qgeo::ensemble_variance(exp).stats.variance();
    EXPECT_LT(std::max(v1, v2) / std::min(v1, v2), 2.0) << v1 << " " << v2;
}

TEST(Vqa, EvaluateInstanceChecksInputs) {
    const auto t = CircuitTemplate::build(2, 1, RotationScheme::FixedX,
                                          GateKind::CNOT, Topology::Chain, 0);
    const auto theta = qgeo::sample_parameters(t, 1);
    EXPECT_THROW((void)qgeo::evaluate_instance(t, theta, qgeo::build_zz(2), 2,
                                               {}),
                 std::out_of_range);
    EXPECT_THROW((void)qgeo::evaluate_instance(t, theta, qgeo::build_ising(3, 1),
                                               0, {}),
                 std::invalid_argument);
    const auto s = qgeo::evaluate_instance(t, theta, qgeo::build_zz(2), 1,
                                           {true, true});
    EXPECT_EQ(s.effective_dimension, 2);
    EXPECT_EQ(qgeo::quantity_from_string("qng"),
              qgeo::Quantity::NaturalGradient);
    EXPECT_THROW((void)qgeo::quantity_from_string("hessian"),
                 std::invalid_argument);
}

} // namespace
