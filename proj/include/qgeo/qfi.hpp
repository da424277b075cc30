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
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qgeo/circuit.hpp"

namespace qgeo {

/// Relative zero threshold for eigenvalues of the metric.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Most negative eigenvalue a metric may have before it is rejected.
inline constexpr double kPsdFloor = -1e-10;

/// A computed quantity violated a mathematical guarantee (e.g. a metric
/// with a clearly negative eigenvalue).
class NumericalGuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Fubini-Study metric of a circuit state,
 * F_ij = Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>).
 *
 * Diagonal entries are at most 1/4 for Pauli-generated rotations.
 */
struct QfiMatrix {
    Eigen::MatrixXd entries;

    [[nodiscard]] int dim() const noexcept {
        return static_cast<int>(entries.rows());
    }
};

/// Eigenpairs sorted by descending eigenvalue; eigenvectors are columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    [[nodiscard]] int size() const noexcept {
        return static_cast<int>(eigenvalues.size());
    }
};

struct CapacityReport {
    int effective_dimension = 0; ///< G_C at the evaluated parameters
    int parameter_dimension = 0; ///< D_C estimate
    double redundancy = 0.0;     ///< (M - D_C) / M
    double rank_tolerance = kDefaultRankTolerance;
};

struct Histogram {
    std::vector<double> bin_edges; ///< num_bins + 1 ascending edges
    std::vector<int> counts;
};

struct SpectrumStats {
    double var_log_nonzero = 0.0; ///< population variance of ln(lambda)
    double min_nonzero = 0.0;
    Histogram histogram;          ///< over log10(lambda)
};

struct MeasurementCosts {
    std::int64_t shift_rule_fidelities = 0;
    std::int64_t hadamard_tests = 0;
    std::int64_t pauli_measurements = 0;
};

[[nodiscard]] QfiMatrix compute_qfi(const CircuitTemplate &tmpl,
                                    const ParameterVector &theta);

/// Metric from an already computed state and its tangents.
[[nodiscard]] QfiMatrix qfi_from_tangents(const TangentBundle &bundle);

/// Full symmetric eigendecomposition. Rejects matrices that are not
/// symmetric to within 1e-10 relative to their largest entry.
[[nodiscard]] Spectrum eigendecompose(const QfiMatrix &f);

/// Eigenvalues above this count as nonzero: tol * max(lambda_max, 1/4).
/// Throws NumericalGuardError if the smallest eigenvalue is below
/// kPsdFloor * max(1, lambda_max).
void require_psd(const Spectrum &spec);

[[nodiscard]] double rank_threshold(const Spectrum &spec,
                                    double rank_tolerance);

/// G_C, the number of nonzero eigenvalues.
[[nodiscard]] int effective_dimension(
    const Spectrum &spec, double rank_tolerance = kDefaultRankTolerance);

struct DimensionEstimate {
    int value = 0;            ///< max over samples
    std::vector<int> samples; ///< G_C at each random draw
    [[nodiscard]] bool consistent() const;
};

/**
 * @brief D_C estimated as the largest G_C over random parameter draws.
 *
 * Draw i uses sample_parameters(tmpl, derive_seed(seed,
 * stream::kDimensionSamples, i)).
 */
[[nodiscard]] DimensionEstimate
parameter_dimension(const CircuitTemplate &tmpl, int num_samples,
                    std::uint64_t seed,
                    double rank_tolerance = kDefaultRankTolerance);

/// (M - D_C) / M.
[[nodiscard]] double redundancy(int num_params, int dimension);

[[nodiscard]] CapacityReport
capacity_report(const CircuitTemplate &tmpl, const ParameterVector &theta,
                int num_samples, std::uint64_t seed,
                double rank_tolerance = kDefaultRankTolerance);

/// Layer count at which D_C saturates: (1 - R_C)(2^{N+1} - 2) / b.
[[nodiscard]] double predict_transition_depth(double redundancy_c,
                                              int num_qubits,
                                              int slots_per_layer);

/// Uniform bins over [min, max] of @p values; the last bin is closed.
[[nodiscard]] Histogram make_histogram(std::span<const double> values,
                                       int num_bins);

/// Eigenvalues classified nonzero, descending.
[[nodiscard]] std::vector<double>
nonzero_eigenvalues(const Spectrum &spec, double rank_tolerance);

[[nodiscard]] SpectrumStats spectrum_stats(const Spectrum &spec,
                                           double rank_tolerance,
                                           int num_bins = 40);

[[nodiscard]] MeasurementCosts measurement_costs(std::int64_t num_params);

} // namespace qgeo
