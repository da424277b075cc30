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
#include "qgeo/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgeo {

namespace {

bool is_degenerate(const ParameterVector &theta) {
    constexpr double quarter = std::numbers::pi / 2;
    return std::all_of(theta.values.begin(), theta.values.end(),
                       [](double v) {
                           const double r = v / quarter;
                           return std::abs(r - std::round(r)) * quarter < 1e-9;
                       });
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd &f,
                          const std::vector<int> &keep) {
    const auto n = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = f(keep[i], keep[j]);
        }
    }
    return out;
}

char axis_letter(GateKind axis) {
    switch (axis) {
    case GateKind::RotX:
        return 'x';
    case GateKind::RotY:
        return 'y';
    case GateKind::RotZ:
        return 'z';
    case GateKind::RotW:
        return 'w';
    default:
        return '?';
    }
}

} // namespace

PruneResult prune(const CircuitTemplate &tmpl,
                  const ParameterVector &theta_random,
                  double rank_tolerance) {
    if (tmpl.parameter_count() < 1) {
        throw std::invalid_argument("prune: template has no active slots");
    }
    if (is_degenerate(theta_random)) {
        throw std::invalid_argument(
            "prune: parameters are all multiples of pi/2 (e.g. theta = 0); "
            "draw theta uniformly from [0, 2 pi) with sample_parameters");
    }
    const QfiMatrix full = compute_qfi(tmpl, theta_random);
    const auto active = tmpl.active_slots();

    std::vector<int> keep(active.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = static_cast<int>(i);
    }

    PruneLog log;
    log.initial_M = tmpl.parameter_count();
    Eigen::MatrixXd current = full.entries;
    Spectrum spec = eigendecompose({current});
    int rank = effective_dimension(spec, rank_tolerance);
    log.D_C_before = rank;
    while (rank < spec.size()) {
        const double cut = rank_threshold(spec, rank_tolerance);
        // beta_j over eigenvectors with zero eigenvalue.
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(spec.size());
        for (int i = 0; i < spec.size(); ++i) {
            if (spec.eigenvalues(i) <= cut) {
                beta += spec.eigenvectors.col(i).cwiseAbs2();
            }
        }
        // Largest index first. A candidate whose deletion lowers the
        // numerical rank of the remaining block is skipped.
        bool removed = false;
        for (int j = spec.size() - 1; j >= 0 && !removed; --j) {
            if (beta(j) <= kNullWeightThreshold) {
                continue;
            }
            std::vector<int> trial = keep;
            trial.erase(trial.begin() + j);
            Eigen::MatrixXd next = submatrix(full.entries, trial);
            Spectrum next_spec = eigendecompose({next});
            if (effective_dimension(next_spec, rank_tolerance) < rank) {
                ++log.rejected_candidates;
                continue;
            }
            // Masking sets the gate to the identity rather than freezing its
            // angle, so the masked circuit itself must keep the rank too.
            std::vector<int> masked_slots = log.removed_indices;
            masked_slots.push_back(active[keep[j]]);
            const CircuitTemplate masked = tmpl.without_slots(masked_slots);
            const int masked_rank = effective_dimension(
                eigendecompose(compute_qfi(
                    masked, restrict_parameters(tmpl, theta_random, masked))),
                rank_tolerance);
            if (masked_rank < log.D_C_before) {
                ++log.rejected_candidates;
                continue;
            }
            log.removed_indices.push_back(active[keep[j]]);
            keep = std::move(trial);
            current = std::move(next);
            spec = std::move(next_spec);
            removed = true;
        }
        if (!removed) {
            break;
        }
        ++log.iterations;
    }

    PruneResult result{tmpl.without_slots(log.removed_indices), {}, {}};
    log.final_M = result.pruned.parameter_count();
    if (log.final_M > 0) {
        const ParameterVector theta_kept =
            restrict_parameters(tmpl, theta_random, result.pruned);
        log.D_C_after = effective_dimension(
            eigendecompose(compute_qfi(result.pruned, theta_kept)),
            rank_tolerance);
    }
    result.log = std::move(log);
    result.truncated.entries = std::move(current);
    return result;
}

ParameterVector restrict_parameters(const CircuitTemplate &original,
                                    const ParameterVector &theta,
                                    const CircuitTemplate &pruned) {
    if (theta.size() != static_cast<std::size_t>(original.parameter_count())) {
        throw std::invalid_argument("restrict_parameters: theta length does "
                                    "not match the original template");
    }
    if (pruned.num_slots() != original.num_slots()) {
        throw std::invalid_argument("restrict_parameters: templates do not "
                                    "share slot indexing");
    }
    std::vector<int> param_of_slot(original.num_slots(), -1);
    const auto active = original.active_slots();
    for (std::size_t k = 0; k < active.size(); ++k) {
        param_of_slot[active[k]] = static_cast<int>(k);
    }
    ParameterVector out;
    for (int s : pruned.active_slots()) {
        if (param_of_slot[s] < 0) {
            throw std::invalid_argument("restrict_parameters: pruned template "
                                        "activates a slot the original masks");
        }
        out.values.push_back(theta[param_of_slot[s]]);
    }
    return out;
}

PruneVerification verify_prune(const CircuitTemplate &original,
                               const CircuitTemplate &pruned, int num_samples,
                               std::uint64_t seed, double rank_tolerance) {
    PruneVerification v;
    v.dc_original =
        parameter_dimension(original, num_samples, seed, rank_tolerance).value;
    v.pruned_M = pruned.parameter_count();
    v.dc_pruned =
        v.pruned_M > 0
            ? parameter_dimension(pruned, num_samples, seed, rank_tolerance)
                  .value
            : 0;
    v.ok = v.dc_pruned == v.dc_original && v.pruned_M == v.dc_original;
    return v;
}

LayerCompaction layer_compaction_report(const CircuitTemplate &t) {
    LayerCompaction r;
    const int b = t.slots_per_layer();
    for (int l = 0; l < t.num_layers(); ++l) {
        bool all_masked = true;
        for (int s = l * b; s < (l + 1) * b; ++s) {
            all_masked = all_masked && !t.is_active(s);
        }
        r.removable_layers += all_masked ? 1 : 0;
    }
    return r;
}

std::string render_grid(const CircuitTemplate &t) {
    std::vector<std::string> rows(t.num_qubits());
    const auto slots = t.slots();
    for (int s = 0; s < t.num_slots(); ++s) {
        rows[slots[s].qubit] +=
            t.is_active(s) ? axis_letter(slots[s].axis) : 'I';
    }
    std::string out;
    for (const auto &r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

} // namespace qgeo
