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
#include "qgeo/vqa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgeo/parallel.hpp"
#include "qgeo/rng.hpp"

namespace qgeo {

Hamiltonian build_zz(int num_qubits) {
    if (num_qubits < 2) {
        throw std::invalid_argument("build_zz requires N >= 2");
    }
    Hamiltonian h;
    h.terms.push_back({1.0, PauliString{{0, Pauli::Z}, {1, Pauli::Z}}});
    return h;
}

Hamiltonian build_ising(int num_qubits, double field) {
    if (num_qubits < 2) {
        throw std::invalid_argument("build_ising requires N >= 2");
    }
    Hamiltonian h;
    for (int n = 0; n + 1 < num_qubits; ++n) {
        h.terms.push_back({1.0, PauliString{{n, Pauli::Z}, {n + 1, Pauli::Z}}});
    }
    for (int n = 0; n < num_qubits; ++n) {
        h.terms.push_back({field, PauliString{{n, Pauli::X}}});
    }
    return h;
}

double expectation(const StateVector &psi, const Hamiltonian &h) {
    double e = 0.0;
    for (const auto &term : h.terms) {
        e += term.coefficient * pauli_expectation(psi, term.op);
    }
    return e;
}

StateVector apply_hamiltonian(const StateVector &psi, const Hamiltonian &h) {
    std::vector<Complex> out(psi.dim(), Complex{});
    for (const auto &term : h.terms) {
        const StateVector p = apply_pauli_string(psi, term.op);
        const auto a = p.amplitudes();
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += term.coefficient * a[i];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

double energy(const CircuitTemplate &tmpl, const ParameterVector &theta,
              const Hamiltonian &h) {
    return expectation(prepare_state(tmpl, theta), h);
}

GradientVector gradient_from_tangents(const TangentBundle &b,
                                      const Hamiltonian &h) {
    const StateVector h_psi = apply_hamiltonian(b.state, h);
    GradientVector g;
    g.values.reserve(b.tangents.size());
    for (const auto &t : b.tangents) {
        g.values.push_back(2.0 * inner_product(t, h_psi).real());
    }
    return g;
}

GradientVector gradient(const CircuitTemplate &tmpl,
                        const ParameterVector &theta, const Hamiltonian &h) {
    return gradient_from_tangents(batch_tangent_states(tmpl, theta), h);
}

GradientVector natural_gradient(const Spectrum &spec, const GradientVector &g,
                                double rank_tolerance) {
    if (static_cast<int>(g.size()) != spec.size()) {
        throw std::invalid_argument("natural_gradient: metric is " +
                                    std::to_string(spec.size()) +
                                    "-dimensional, gradient has " +
                                    std::to_string(g.size()) + " entries");
    }
    const double cut = rank_threshold(spec, rank_tolerance);
    const Eigen::Map<const Eigen::VectorXd> gv(g.values.data(),
                                               spec.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(spec.size());
    for (int i = 0; i < spec.size(); ++i) {
        const double lambda = spec.eigenvalues(i);
        if (lambda > cut) {
            const auto v = spec.eigenvectors.col(i);
            out += (v.dot(gv) / lambda) * v;
        }
    }
    return {std::vector<double>(out.data(), out.data() + out.size())};
}

GradientVector natural_gradient(const QfiMatrix &f, const GradientVector &g,
                                double rank_tolerance) {
    if (static_cast<int>(g.size()) != f.dim()) {
        throw std::invalid_argument("natural_gradient: dimension mismatch");
    }
    return natural_gradient(eigendecompose(f), g, rank_tolerance);
}

void EnsembleStats::add(double x) noexcept {
    ++count_;
    sum_ += x;
    sum_sq_ += x * x;
}

void EnsembleStats::merge(const EnsembleStats &other) noexcept {
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
}

double EnsembleStats::mean() const noexcept {
    return count_ > 0 ? sum_ / static_cast<double>(count_) : 0.0;
}

double EnsembleStats::variance() const noexcept {
    if (count_ == 0) {
        return 0.0;
    }
    const double m = mean();
    return std::max(0.0, sum_sq_ / static_cast<double>(count_) - m * m);
}

double jackknife_variance_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : values) {
        mean += x;
    }
    mean /= static_cast<double>(n);
    double d2 = 0.0;
    for (double x : values) {
        d2 += (x - mean) * (x - mean);
    }
    // Leave-one-out variance from centered sums.
    const double m = static_cast<double>(n - 1);
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - mean;
        loo[i] = (d2 - d * d) / m - (d / m) * (d / m);
        loo_mean += loo[i];
    }
    loo_mean /= static_cast<double>(n);
    double acc = 0.0;
    for (double v : loo) {
        acc += (v - loo_mean) * (v - loo_mean);
    }
    return std::sqrt(m / static_cast<double>(n) * acc);
}

CircuitTemplate CircuitFamily::instance(std::uint64_t structure_seed) const {
    return CircuitTemplate::build(num_qubits, num_layers, scheme, entangler,
                                  topology, structure_seed);
}

std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::Gradient:
        return "grad";
    case Quantity::NaturalGradient:
        return "qng";
    case Quantity::Energy:
        return "energy";
    }
    return "?";
}

Quantity quantity_from_string(std::string_view name) {
    for (auto q :
         {Quantity::Gradient, Quantity::NaturalGradient, Quantity::Energy}) {
        if (to_string(q) == name) {
            return q;
        }
    }
    throw std::invalid_argument("unknown quantity '" + std::string(name) +
                                "'");
}

std::uint64_t instance_structure_seed(std::uint64_t master, int instance) {
    return derive_seed(master, stream::kStructure,
                       static_cast<std::uint64_t>(instance));
}

std::uint64_t instance_parameter_seed(std::uint64_t master, int instance) {
    return derive_seed(master, stream::kParameters,
                       static_cast<std::uint64_t>(instance));
}

InstanceSample evaluate_instance(const CircuitTemplate &tmpl,
                                 const ParameterVector &theta,
                                 const Hamiltonian &h, int component,
                                 InstanceRequest req, double rank_tolerance) {
    if (component < 0 || component >= tmpl.parameter_count()) {
        throw std::out_of_range("component index " +
                                std::to_string(component) +
                                " out of range for M=" +
                                std::to_string(tmpl.parameter_count()));
    }
    if (!h.terms.empty() &&
        std::any_of(h.terms.begin(), h.terms.end(), [&](const auto &t) {
            return t.op.max_qubit() >= tmpl.num_qubits();
        })) {
        throw std::invalid_argument("Hamiltonian acts outside the circuit's "
                                    "qubits");
    }
    const TangentBundle bundle = batch_tangent_states(tmpl, theta);
    InstanceSample s;
    s.energy = expectation(bundle.state, h);
    const GradientVector g = gradient_from_tangents(bundle, h);
    s.gradient = g[component];
    if (req.natural_gradient || req.effective_dimension) {
        const Spectrum spec = eigendecompose(qfi_from_tangents(bundle));
        require_psd(spec);
        if (req.effective_dimension) {
            s.effective_dimension = effective_dimension(spec, rank_tolerance);
        }
        if (req.natural_gradient) {
            s.natural_gradient =
                natural_gradient(spec, g, rank_tolerance)[component];
        }
    }
    return s;
}

EnsembleResult summarize(std::vector<double> values) {
    EnsembleResult r;
    for (double v : values) {
        r.stats.add(v);
    }
    r.jackknife_stderr = jackknife_variance_stderr(values);
    r.values = std::move(values);
    return r;
}

EnsembleResult ensemble_variance(const EnsembleExperiment &exp) {
    if (exp.num_instances < 2) {
        throw std::invalid_argument("ensemble_variance needs >= 2 instances");
    }
    // Validates the family once up front.
    (void)exp.family.instance(0);

    std::vector<double> values(exp.num_instances);
    const InstanceRequest req{exp.quantity == Quantity::NaturalGradient,
                              false};
    parallel_for(exp.num_instances, exp.threads, [&](int i) {
        const CircuitTemplate tmpl = exp.family.instance(
            instance_structure_seed(exp.master_seed, i));
        const ParameterVector theta = sample_parameters(
            tmpl, instance_parameter_seed(exp.master_seed, i));
        const InstanceSample s =
            evaluate_instance(tmpl, theta, exp.hamiltonian, exp.component,
                              req, exp.rank_tolerance);
        switch (exp.quantity) {
        case Quantity::Gradient:
            values[i] = s.gradient;
            break;
        case Quantity::NaturalGradient:
            values[i] = s.natural_gradient;
            break;
        case Quantity::Energy:
            values[i] = s.energy;
            break;
        }
    });
    return summarize(std::move(values));
}

std::vector<ASweepRow> a_sweep(const CircuitFamily &family,
                               std::span<const double> a_values,
                               const Hamiltonian &h, int num_instances,
                               std::uint64_t master_seed, int component,
                               double rank_tolerance, int threads) {
    for (double a : a_values) {
        if (!(a > 0.0 && a <= 1.0)) {
            throw std::invalid_argument("a values must lie in (0, 1]");
        }
    }
    if (num_instances < 2) {
        throw std::invalid_argument("a_sweep needs >= 2 instances");
    }
    const std::size_t na = a_values.size();
    std::vector<double> grads(na * num_instances);
    std::vector<int> dims(na * num_instances);
    parallel_for(num_instances, threads, [&](int i) {
        const CircuitTemplate tmpl =
            family.instance(instance_structure_seed(master_seed, i));
        const ParameterVector theta_random =
            sample_parameters(tmpl, instance_parameter_seed(master_seed, i));
        for (std::size_t j = 0; j < na; ++j) {
            const InstanceSample s = evaluate_instance(
                tmpl, scaled(theta_random, a_values[j]), h, component,
                {false, true}, rank_tolerance);
            grads[j * num_instances + i] = s.gradient;
            dims[j * num_instances + i] = s.effective_dimension;
        }
    });
    std::vector<ASweepRow> rows;
    for (std::size_t j = 0; j < na; ++j) {
        ASweepRow row;
        row.a = a_values[j];
        double gc = 0.0;
        for (int i = 0; i < num_instances; ++i) {
            gc += dims[j * num_instances + i];
        }
        row.mean_effective_dimension = gc / num_instances;
        row.gradient = summarize(
            std::vector<double>(grads.begin() + j * num_instances,
                                grads.begin() + (j + 1) * num_instances));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qgeo
