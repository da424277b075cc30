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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qgeo/circuit.hpp"
#include "qgeo/vqa.hpp"

namespace qgeo {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind : std::uint8_t {
    DcVsP,
    SpectrumVsP,
    VarianceVsP,
    VarianceVsN,
    ASweep,
    GcZeroScaling,
    PruneDemo,
    CostTable,
};

[[nodiscard]] std::string_view to_string(ExperimentKind k);
[[nodiscard]] ExperimentKind experiment_kind_from_string(std::string_view s);

struct FamilySpec {
    RotationScheme scheme = RotationScheme::RandXYZ;
    GateKind entangler = GateKind::CNOT;
    Topology topology = Topology::Chain;

    /// "rand_xyz_cnot_chain"
    [[nodiscard]] std::string tag() const;
};

/**
 * @brief One experiment run, usually loaded from a JSON document.
 *
 * scheme, entangler and topology accept a single name or a list; the run
 * covers their cartesian product. Integer ranges accept a list or an object
 * {"from": a, "to": b, "step": s} with an inclusive upper bound.
 */
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::DcVsP;
    std::string experiment_id = "run";

    std::vector<RotationScheme> schemes{RotationScheme::RandXYZ};
    std::vector<GateKind> entanglers{GateKind::CNOT};
    std::vector<Topology> topologies{Topology::Chain};
    InitialLayer initial_layer = InitialLayer::SqrtHadamard;

    std::vector<int> n_values;
    std::vector<int> p_values;
    std::vector<double> a_values;
    std::vector<std::int64_t> m_values;
    int p_per_qubit = 2; ///< variance_vs_n depth p = p_per_qubit * N

    int num_instances = 100;
    std::uint64_t master_seed = 0;
    double rank_tolerance = kDefaultRankTolerance;
    std::string output_dir = "out";

    std::vector<Quantity> quantities{Quantity::Gradient};
    std::string hamiltonian = "zz"; ///< "zz" or "ising"
    double ising_field = 1.0;
    int component = 0;
    int qng_max_params = 400;
    int dimension_samples = 3;
    int histogram_bins = 40;
    int p_cap = 60;   ///< gc_zero_scaling scan limit
    int patience = 3; ///< gc_zero_scaling early stop
    int threads = 1;  ///< 0 picks the hardware concurrency

    [[nodiscard]] std::vector<FamilySpec> families() const;
    [[nodiscard]] CircuitTemplate make_template(const FamilySpec &f, int n,
                                                int p,
                                                std::uint64_t seed) const;
    [[nodiscard]] Hamiltonian make_hamiltonian(int n) const;
    [[nodiscard]] int worker_count() const;
};

/// Parses and validates a JSON config. Errors carry the offending field and
/// its line number.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &path);

/// Throws ConfigError when a value is out of range for the experiment kind.
void validate(const ExperimentConfig &cfg);

/// Canonical form: every key present, lists always arrays.
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig &cfg);

/// FNV-1a 64 of the canonical form without output_dir and threads, which do
/// not affect results.
[[nodiscard]] std::uint64_t config_hash(const ExperimentConfig &cfg);

struct OutputFile {
    std::string name;
    std::string contents;
};

struct RunOutput {
    std::vector<OutputFile> files;

    void add(std::string name, std::string contents);
    [[nodiscard]] const OutputFile &file(std::string_view name) const;
};

[[nodiscard]] RunOutput run_dc_vs_p(const ExperimentConfig &cfg);
[[nodiscard]] RunOutput run_spectrum_vs_p(const ExperimentConfig &cfg);
/// Handles both variance_vs_p and variance_vs_n.
[[nodiscard]] RunOutput run_variance(const ExperimentConfig &cfg);
[[nodiscard]] RunOutput run_a_sweep(const ExperimentConfig &cfg);
[[nodiscard]] RunOutput run_gc_zero_scaling(const ExperimentConfig &cfg);
[[nodiscard]] RunOutput run_prune_demo(const ExperimentConfig &cfg);
[[nodiscard]] RunOutput run_cost_table(const ExperimentConfig &cfg);

/// Dispatches on cfg.kind.
[[nodiscard]] RunOutput run_experiment(const ExperimentConfig &cfg);

/// Tool version, config hash, canonical config and a digest per file. No
/// timestamps, so identical runs give identical manifests.
[[nodiscard]] nlohmann::json make_manifest(const ExperimentConfig &cfg,
                                           const RunOutput &out);

/// Writes every file plus manifest.json into @p dir, creating it if needed.
void write_run(const ExperimentConfig &cfg, const RunOutput &out,
               const std::filesystem::path &dir);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

} // namespace qgeo
