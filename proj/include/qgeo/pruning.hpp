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
#include <string>
#include <vector>

#include "qgeo/circuit.hpp"
#include "qgeo/qfi.hpp"

namespace qgeo {

/// Null-space weight above which a parameter is considered removable.
inline constexpr double kNullWeightThreshold = 1e-8;

struct PruneLog {
    std::vector<int> removed_indices; ///< original slot indices, removal order
    int iterations = 0;
    /// Candidates skipped because removing them lowered a numerical rank.
    int rejected_candidates = 0;
    int initial_M = 0;
    int final_M = 0;
    int D_C_before = 0; ///< rank of the metric at theta_random
    /// Rank of the pruned circuit's own metric at the surviving angles.
    /// Equal to final_M unless truncation diverged from the true circuit.
    int D_C_after = 0;
};

struct PruneResult {
    CircuitTemplate pruned;
    PruneLog log;
    /// Metric of the input restricted to the surviving parameters, as
    /// maintained by the deletion loop.
    QfiMatrix truncated;
};

/**
 * @brief Removes redundant parameters using the metric's null space.
 *
 * The metric F(theta_random) is computed once. Each pass eigendecomposes
 * the current submatrix, forms the null-space weight
 * beta_j = sum_{lambda_i = 0} |alpha_j^(i)|^2, drops the largest index j with
 * beta_j > kNullWeightThreshold, and deletes its row and column. A
 * candidate is skipped in favour of the next lower index when deleting it
 * would lower the numerical rank of the remaining block, or when masking
 * its slot would lower the rank of the masked circuit's own metric. The loop stops when
 * the submatrix has no zero eigenvalues or no candidate survives.
 *
 * Throws std::invalid_argument when every angle sits on a multiple of pi/2
 * (theta = 0 in particular); such points are not generic and the metric
 * rank there can undercount D_C.
 */
[[nodiscard]] PruneResult
prune(const CircuitTemplate &tmpl, const ParameterVector &theta_random,
      double rank_tolerance = kDefaultRankTolerance);

/// Angles of @p pruned's parameters taken from @p theta of @p original.
[[nodiscard]] ParameterVector
restrict_parameters(const CircuitTemplate &original,
                    const ParameterVector &theta,
                    const CircuitTemplate &pruned);

struct PruneVerification {
    bool ok = false;
    int dc_original = 0;
    int dc_pruned = 0;
    int pruned_M = 0;
};

/// ok iff D_C(pruned) == D_C(original) == M(pruned).
[[nodiscard]] PruneVerification
verify_prune(const CircuitTemplate &original, const CircuitTemplate &pruned,
             int num_samples, std::uint64_t seed,
             double rank_tolerance = kDefaultRankTolerance);

struct LayerCompaction {
    int removable_layers = 0;
};

/// Counts layers whose rotation slots are all masked. Such layers reduce to
/// their entangling gates; nothing is deleted structurally.
[[nodiscard]] LayerCompaction layer_compaction_report(const CircuitTemplate &t);

/// One row per qubit, one character per slot: axis letter, or I if masked.
[[nodiscard]] std::string render_grid(const CircuitTemplate &t);

} // namespace qgeo
