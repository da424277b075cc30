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
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qgeo/circuit.hpp"
#include "qgeo/qfi.hpp"

namespace qgeo {

struct HamiltonianTerm {
    double coefficient = 1.0;
    PauliString op;
};

/// Real-weighted sum of Pauli strings.
struct Hamiltonian {
    std::vector<HamiltonianTerm> terms;

    [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }
};

/// sigma^z_0 sigma^z_1 on an N-qubit register.
[[nodiscard]] Hamiltonian build_zz(int num_qubits);

/// Open-chain transverse Ising model: sum_{n<N-1} Z_n Z_{n+1} + h sum_n X_n.
[[nodiscard]] Hamiltonian build_ising(int num_qubits, double h);

[[nodiscard]] double expectation(const StateVector &psi, const Hamiltonian &h);

/// H|psi>.
[[nodiscard]] StateVector apply_hamiltonian(const StateVector &psi,
                                            const Hamiltonian &h);

[[nodiscard]] double energy(const CircuitTemplate &tmpl,
                            const ParameterVector &theta,
                            const Hamiltonian &h);

struct GradientVector {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values[i]; }
};

/// dE/d theta_k = 2 Re <d_k psi|H|psi>.
[[nodiscard]] GradientVector gradient(const CircuitTemplate &tmpl,
                                      const ParameterVector &theta,
                                      const Hamiltonian &h);

[[nodiscard]] GradientVector gradient_from_tangents(const TangentBundle &b,
                                                    const Hamiltonian &h);

/// F^+ g with the spectral pseudo-inverse; eigen-directions at or below the
/// rank threshold are dropped.
[[nodiscard]] GradientVector
natural_gradient(const QfiMatrix &f, const GradientVector &g,
                 double rank_tolerance = kDefaultRankTolerance);

[[nodiscard]] GradientVector
natural_gradient(const Spectrum &spec, const GradientVector &g,
                 double rank_tolerance = kDefaultRankTolerance);

/**
 * @brief Streaming count / sum / sum-of-squares accumulator.
 *
 * variance() is the population variance E[x^2] - E[x]^2, clamped at 0.
 */
class EnsembleStats {
  public:
    void add(double x) noexcept;
    void merge(const EnsembleStats &other) noexcept;

    [[nodiscard]] std::int64_t count() const noexcept { return count_; }
    [[nodiscard]] double sum() const noexcept { return sum_; }
    [[nodiscard]] double sum_squares() const noexcept { return sum_sq_; }
    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double variance() const noexcept;

  private:
    std::int64_t count_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

/// Jackknife standard error of the population variance of @p values.
[[nodiscard]] double jackknife_variance_stderr(std::span<const double> values);

/// Structural description of a circuit family; instances differ by seed.
struct CircuitFamily {
    RotationScheme scheme = RotationScheme::RandXYZ;
    GateKind entangler = GateKind::CNOT;
    Topology topology = Topology::Chain;
    int num_qubits = 4;
    int num_layers = 1;

    [[nodiscard]] CircuitTemplate instance(std::uint64_t structure_seed) const;
};

enum class Quantity : std::uint8_t { Gradient, NaturalGradient, Energy };

[[nodiscard]] std::string_view to_string(Quantity q);
[[nodiscard]] Quantity quantity_from_string(std::string_view name);

/// Per-instance seeds derived from (master seed, instance index).
[[nodiscard]] std::uint64_t instance_structure_seed(std::uint64_t master,
                                                    int instance);
[[nodiscard]] std::uint64_t instance_parameter_seed(std::uint64_t master,
                                                    int instance);

/// Everything evaluated for one random circuit instance.
struct InstanceSample {
    double energy = 0.0;
    double gradient = 0.0;         ///< component k of dE/d theta
    double natural_gradient = 0.0; ///< component k of F^+ dE/d theta
    int effective_dimension = 0;   ///< G_C at theta
};

struct InstanceRequest {
    bool natural_gradient = false;
    bool effective_dimension = false;
};

[[nodiscard]] InstanceSample
evaluate_instance(const CircuitTemplate &tmpl, const ParameterVector &theta,
                  const Hamiltonian &h, int component, InstanceRequest req,
                  double rank_tolerance = kDefaultRankTolerance);

struct EnsembleExperiment {
    CircuitFamily family;
    Hamiltonian hamiltonian;
    int num_instances = 100;
    std::uint64_t master_seed = 0;
    Quantity quantity = Quantity::Gradient;
    int component = 0;
    double rank_tolerance = kDefaultRankTolerance;
    int threads = 1;
};

struct EnsembleResult {
    EnsembleStats stats;
    double jackknife_stderr = 0.0;
    std::vector<double> values; ///< per instance, index order
};

/// Accumulates values in instance-index order.
[[nodiscard]] EnsembleResult summarize(std::vector<double> values);

/**
 * @brief Variance of one scalar over random circuit instances.
 *
 * Instance i uses structure seed instance_structure_seed(master, i) and
 * angles sample_parameters(..., instance_parameter_seed(master, i)).
 * Results do not depend on the thread count.
 */
[[nodiscard]] EnsembleResult ensemble_variance(const EnsembleExperiment &exp);

struct ASweepRow {
    double a = 1.0;
    double mean_effective_dimension = 0.0;
    EnsembleResult gradient;
};

/// theta = a * theta_random per instance, reusing each instance's draw for
/// every a.
[[nodiscard]] std::vector<ASweepRow>
a_sweep(const CircuitFamily &family, std::span<const double> a_values,
        const Hamiltonian &h, int num_instances, std::uint64_t master_seed,
        int component = 0, double rank_tolerance = kDefaultRankTolerance,
        int threads = 1);

} // namespace qgeo
