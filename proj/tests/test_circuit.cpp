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
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qgeo/circuit.hpp"
#include "qgeo/rng.hpp"

namespace {

using qgeo::CircuitTemplate;
using qgeo::GateKind;
using qgeo::InitialLayer;
using qgeo::ParameterVector;
using qgeo::RotationScheme;
using qgeo::Topology;

const RotationScheme kSchemes[] = {
    RotationScheme::RandXYZ, RotationScheme::RandXYW, RotationScheme::FixedX,
    RotationScheme::FixedY,  RotationScheme::FixedZ,  RotationScheme::ZXZ};
const GateKind kEntanglers[] = {GateKind::CNOT, GateKind::CPHASE,
                                GateKind::SqrtISwap};
const Topology kTopologies[] = {Topology::Chain, Topology::All, Topology::Alt};

TEST(Circuit, ParameterCounts) {
    EXPECT_EQ(CircuitTemplate::build(4, 3, RotationScheme::FixedY,
                                     GateKind::CNOT, Topology::Chain, 0)
                  .parameter_count(),
              12);
    const auto zxz = CircuitTemplate::build(4, 3, RotationScheme::ZXZ,
                                            GateKind::CNOT, Topology::Chain, 0);
    EXPECT_EQ(zxz.parameter_count(), 36);
    EXPECT_EQ(zxz.slots_per_layer(), 12);
    EXPECT_EQ(CircuitTemplate::build(6, 40, RotationScheme::RandXYZ,
                                     GateKind::CPHASE, Topology::Chain, 1)
                  .parameter_count(),
              240);
}

TEST(Circuit, SlotsAreLayerMajor) {
    const auto t = CircuitTemplate::build(3, 2, RotationScheme::ZXZ,
                                          GateKind::CNOT, Topology::Chain, 0);
    const auto slots = t.slots();
    EXPECT_EQ(slots[4].layer, 0);
    EXPECT_EQ(slots[4].qubit, 1);
    EXPECT_EQ(slots[4].axis, GateKind::RotX);
    EXPECT_EQ(slots[9].layer, 1);
    EXPECT_EQ(slots[9].qubit, 0);
    EXPECT_EQ(slots[9].axis, GateKind::RotZ);
}

TEST(Circuit, TopologyPairs) {
    using P = std::vector<std::pair<int, int>>;
    auto pairs = [](Topology topo, int layer) {
        return CircuitTemplate::build(5, 2, RotationScheme::FixedZ,
                                      GateKind::CNOT, topo, 0)
            .entangler_pairs(layer);
    };
    EXPECT_EQ(pairs(Topology::Chain, 0), (P{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
    EXPECT_EQ(pairs(Topology::Alt, 0), (P{{0, 1}, {2, 3}}));
    EXPECT_EQ(pairs(Topology::Alt, 1), (P{{1, 2}, {3, 4}}));
    EXPECT_EQ(pairs(Topology::All, 1).size(), 10u);
    EXPECT_EQ(pairs(Topology::All, 0).front(), (std::pair{0, 1}));
    EXPECT_EQ(pairs(Topology::All, 0)[4], (std::pair{1, 2}));
}

TEST(Circuit, RandomAxesUseAllThreeLetters) {
    const auto xyz = CircuitTemplate::build(4, 10, RotationScheme::RandXYZ,
                                            GateKind::CNOT, Topology::Chain, 3);
    const auto xyw = CircuitTemplate::build(4, 10, RotationScheme::RandXYW,
                                            GateKind::CNOT, Topology::Chain, 3);
    std::set<GateKind> a, b;
    for (const auto &s : xyz.slots()) {
        a.insert(s.axis);
    }
    for (const auto &s : xyw.slots()) {
        b.insert(s.axis);
    }
    EXPECT_EQ(a, (std::set{GateKind::RotX, GateKind::RotY, GateKind::RotZ}));
    EXPECT_EQ(b, (std::set{GateKind::RotX, GateKind::RotY, GateKind::RotW}));
}

TEST(Circuit, RebuildIsIdentical) {
    const auto a = CircuitTemplate::build(5, 7, RotationScheme::RandXYZ,
                                          GateKind::SqrtISwap, Topology::Alt,
                                          99);
    const auto b = CircuitTemplate::build(5, 7, RotationScheme::RandXYZ,
                                          GateKind::SqrtISwap, Topology::Alt,
                                          99);
    EXPECT_EQ(a, b);
    EXPECT_EQ(qgeo::sample_parameters(a, 4), qgeo::sample_parameters(b, 4));
}

TEST(Circuit, PrepareStateMatchesDenseOracle) {
    std::uint64_t seed = 0;
    for (RotationScheme s : kSchemes) {
        for (GateKind e : kEntanglers) {
            for (Topology topo : kTopologies) {
                for (int n = 1; n <= 4; n += 3) {
                    const auto t =
                        CircuitTemplate::build(n, 3, s, e, topo, ++seed);
                    const auto theta = qgeo::sample_parameters(t, seed);
                    const auto psi = qgeo::prepare_state(t, theta);
                    EXPECT_LT(oracle::max_abs_diff(oracle::to_vec(psi),
                                                   oracle::state(t, theta)),
                              1e-12);
                    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-13);
                }
            }
        }
    }
}

TEST(Circuit, InitialLayerVariantsMatchOracle) {
    for (InitialLayer l :
         {InitialLayer::SqrtHadamard, InitialLayer::Hadamard,
          InitialLayer::None}) {
        const auto t = CircuitTemplate::build(3, 2, RotationScheme::RandXYW,
                                              GateKind::CPHASE,
                                              Topology::Chain, 8)
                           .with_initial_layer(l);
        const auto theta = qgeo::sample_parameters(t, 1);
        EXPECT_LT(oracle::max_abs_diff(
                      oracle::to_vec(qgeo::prepare_state(t, theta)),
                      oracle::state(t, theta)),
                  1e-13);
    }
}

TEST(Circuit, SingleQubitZeroAnglesGiveSqrtHadamardState) {
    const auto t = CircuitTemplate::build(1, 1, RotationScheme::FixedZ,
                                          GateKind::CNOT, Topology::Chain, 0);
    const auto psi = qgeo::prepare_state(t, qgeo::zero_parameters(t));
    EXPECT_NEAR(std::abs(psi[0] - oracle::C(0.5 + 0.5 / std::sqrt(2.0),
                                            0.5 - 0.5 / std::sqrt(2.0))),
                0.0, 1e-15);
}

TEST(Circuit, TangentsHaveNormOneHalfAndMatchFiniteDifferences) {
    const double h = 1e-5;
    for (GateKind e : kEntanglers) {
        const auto t = CircuitTemplate::build(3, 3, RotationScheme::RandXYW, e,
                                              Topology::All, 12);
        const auto theta = qgeo::sample_parameters(t, 5);
        const auto bundle = qgeo::batch_tangent_states(t, theta);
        ASSERT_EQ(bundle.tangents.size(),
                  static_cast<std::size_t>(t.parameter_count()));
        for (int k = 0; k < t.parameter_count(); ++k) {
            const auto single = qgeo::tangent_state(t, theta, t.active_slots()[k]);
            EXPECT_NEAR(single.norm_squared(), 0.25, 1e-13);
            EXPECT_LT(oracle::max_abs_diff(oracle::to_vec(single),
                                           oracle::to_vec(bundle.tangents[k])),
                      1e-13);
            ParameterVector up = theta, down = theta;
            up[k] += h;
            down[k] -= h;
            const oracle::Vec fd = (oracle::state(t, up) -
                                    oracle::state(t, down)) /
                                   (2 * h);
            EXPECT_LT(oracle::max_abs_diff(oracle::to_vec(single), fd), 1e-8);
        }
    }
}

TEST(Circuit, MaskingEqualsZeroAngle) {
    const auto t = CircuitTemplate::build(4, 3, RotationScheme::RandXYZ,
                                          GateKind::SqrtISwap, Topology::Chain,
                                          17);
    const auto theta = qgeo::sample_parameters(t, 2);
    const std::vector<int> drop = {1, 6, 11};
    const auto masked = t.without_slots(drop);
    EXPECT_EQ(masked.parameter_count(), t.parameter_count() - 3);
    ParameterVector zeroed = theta, kept;
    for (int k = 0; k < t.parameter_count(); ++k) {
        if (k == 1 || k == 6 || k == 11) {
            zeroed[k] = 0.0;
        } else {
            kept.values.push_back(theta[k]);
        }
    }
    EXPECT_LT(oracle::max_abs_diff(
                  oracle::to_vec(qgeo::prepare_state(masked, kept)),
                  oracle::to_vec(qgeo::prepare_state(t, zeroed))),
              1e-13);
    EXPECT_THROW((void)qgeo::tangent_state(masked, kept, 6),
                 std::invalid_argument);
}

TEST(Circuit, CustomAxesGiveSeveralSlotsPerQubit) {
    const auto t = CircuitTemplate::custom(1, 1,
                                           {GateKind::RotY, GateKind::RotZ},
                                           GateKind::CNOT, Topology::Chain,
                                           InitialLayer::None);
    EXPECT_EQ(t.parameter_count(), 2);
    EXPECT_EQ(t.scheme(), RotationScheme::Custom);
    const ParameterVector theta{{0.4, 1.1}};
    EXPECT_LT(oracle::max_abs_diff(
                  oracle::to_vec(qgeo::prepare_state(t, theta)),
                  oracle::state(t, theta)),
              1e-15);
}

TEST(Circuit, SampledAnglesAreUniformOnCircle) {
    const auto t = CircuitTemplate::build(4, 250, RotationScheme::FixedX,
                                          GateKind::CNOT, Topology::Chain, 0);
    const auto theta = qgeo::sample_parameters(t, 77);
    double sum = 0.0;
    for (double v : theta.values) {
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 2 * std::numbers::pi);
        sum += v;
    }
    const double n = static_cast<double>(theta.size());
    const double sigma = 2 * std::numbers::pi / std::sqrt(12.0 * n);
    EXPECT_NEAR(sum / n, std::numbers::pi, 4 * sigma);
    const auto half = qgeo::scaled(theta, 0.5);
    EXPECT_DOUBLE_EQ(half[3], theta[3] / 2);
}

TEST(Circuit, RejectsBadInput) {
    EXPECT_THROW(CircuitTemplate::build(0, 1, RotationScheme::FixedX,
                                        GateKind::CNOT, Topology::Chain, 0),
                 std::invalid_argument);
    EXPECT_THROW(CircuitTemplate::build(2, 0, RotationScheme::FixedX,
                                        GateKind::CNOT, Topology::Chain, 0),
                 std::invalid_argument);
    EXPECT_THROW(CircuitTemplate::build(2, 1, RotationScheme::FixedX,
                                        GateKind::RotX, Topology::Chain, 0),
                 std::invalid_argument);
    EXPECT_THROW(CircuitTemplate::custom(2, 1, {GateKind::RotX},
                                         GateKind::CNOT, Topology::Chain,
                                         InitialLayer::None),
                 std::invalid_argument);
    const auto t = CircuitTemplate::build(2, 1, RotationScheme::FixedX,
                                          GateKind::CNOT, Topology::Chain, 0);
    EXPECT_THROW((void)qgeo::prepare_state(t, ParameterVector{{1.0}}),
                 std::invalid_argument);
    EXPECT_THROW((void)t.with_mask({true}), std::invalid_argument);
    const std::vector<int> bad = {5};
    EXPECT_THROW((void)t.without_slots(bad), std::out_of_range);
    EXPECT_THROW((void)qgeo::tangent_state(t, qgeo::zero_parameters(t), 2),
                 std::out_of_range);
    EXPECT_THROW((void)qgeo::topology_from_string("ring"),
                 std::invalid_argument);
    EXPECT_THROW((void)qgeo::entangler_from_string("rx"),
                 std::invalid_argument);
}

TEST(Circuit, NamesRoundTrip) {
    for (RotationScheme s : kSchemes) {
        EXPECT_EQ(qgeo::scheme_from_string(qgeo::to_string(s)), s);
    }
    for (Topology t : kTopologies) {
        EXPECT_EQ(qgeo::topology_from_string(qgeo::to_string(t)), t);
    }
    for (GateKind e : kEntanglers) {
        EXPECT_EQ(qgeo::entangler_from_string(qgeo::to_string(e)), e);
    }
    for (InitialLayer l : {InitialLayer::SqrtHadamard, InitialLayer::Hadamard,
                           InitialLayer::None}) {
        EXPECT_EQ(qgeo::initial_layer_from_string(qgeo::to_string(l)), l);
    }
}

} // namespace
