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

// qgeo: runs one experiment described by a JSON config and writes its CSV
// files plus manifest.json.
//
// Exit codes: 0 success, 1 other failure, 2 config error, 3 numerical guard.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgeo/experiments.hpp"
#include "qgeo/qfi.hpp"

namespace {

struct Command {
    const char *name;
    const char *help;
    std::vector<qgeo::ExperimentKind> kinds;
};

const std::vector<Command> &commands() {
    using K = qgeo::ExperimentKind;
    static const std::vector<Command> cmds = {
        {"dc-vs-p", "Parameter dimension against depth", {K::DcVsP}},
        {"spectrum-vs-p", "Metric spectrum statistics against depth",
         {K::SpectrumVsP}},
        {"variance", "Gradient and natural-gradient variance ensembles",
         {K::VarianceVsP, K::VarianceVsN}},
        {"a-sweep", "Scaled random parameters a * theta", {K::ASweep}},
        {"gc-zero", "Effective dimension at theta = 0", {K::GcZeroScaling}},
        {"prune", "Redundant-parameter pruning demo", {K::PruneDemo}},
        {"costs", "Measurement cost table", {K::CostTable}},
    };
    return cmds;
}

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> tolerance;
};

int run(const Command &cmd, const Overrides &o) {
    qgeo::ExperimentConfig cfg = qgeo::load_config(o.config);
    if (std::find(cmd.kinds.begin(), cmd.kinds.end(), cfg.kind) ==
        cmd.kinds.end()) {
        throw qgeo::ConfigError("config: field 'experiment_kind': '" +
                                std::string(qgeo::to_string(cfg.kind)) +
                                "' cannot run under '" + cmd.name + "'");
    }
    if (o.out) {
        cfg.output_dir = *o.out;
    }
    if (o.seed) {
        cfg.master_seed = *o.seed;
    }
    if (o.threads) {
        cfg.threads = *o.threads;
    }
    if (o.tolerance) {
        cfg.rank_tolerance = *o.tolerance;
    }
    qgeo::validate(cfg);

    const qgeo::RunOutput out = qgeo::run_experiment(cfg);
    qgeo::write_run(cfg, out, cfg.output_dir);
    std::cout << "wrote " << out.files.size() + 1 << " files to "
              << cfg.output_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Capacity, spectrum and trainability experiments for "
                 "layered parametrized circuits"};
    app.set_version_flag("--version", std::string(qgeo::kToolVersion));
    app.require_subcommand(1);

    Overrides o;
    const Command *chosen = nullptr;
    for (const Command &c : commands()) {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", o.config, "JSON experiment config")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--seed", o.seed, "Master seed");
        sub->add_option("--threads", o.threads, "Worker threads, 0 = all")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--tolerance", o.tolerance,
                        "Relative rank tolerance");
        sub->callback([&chosen, &c] { chosen = &c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return run(*chosen, o);
    } catch (const qgeo::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qgeo::NumericalGuardError &e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
