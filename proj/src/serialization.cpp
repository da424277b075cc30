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
#include "qgeo/serialization.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace qgeo {

using nlohmann::json;

json to_json(const CircuitTemplate &t) {
    json mask = json::array();
    for (bool b : t.active_mask()) {
        mask.push_back(b ? 1 : 0);
    }
    json j = {
        {"num_qubits", t.num_qubits()},
        {"num_layers", t.num_layers()},
        {"scheme", to_string(t.scheme())},
        {"entangler", to_string(t.entangler())},
        {"topology", to_string(t.topology())},
        {"structure_seed", t.structure_seed()},
        {"active_mask", std::move(mask)},
    };
    if (t.initial_layer() != InitialLayer::SqrtHadamard) {
        j["initial_layer"] = to_string(t.initial_layer());
    }
    if (t.scheme() == RotationScheme::Custom) {
        json axes = json::array();
        for (const auto &s : t.slots()) {
            axes.push_back(to_string(s.axis));
        }
        j["axes"] = std::move(axes);
    }
    return j;
}

CircuitTemplate template_from_json(const json &j) {
    static const std::set<std::string> known{
        "num_qubits", "num_layers",     "scheme",      "entangler",
        "topology",   "structure_seed", "active_mask", "initial_layer",
        "axes"};
    if (!j.is_object()) {
        throw std::invalid_argument("template JSON must be an object");
    }
    for (const auto &[key, _] : j.items()) {
        if (!known.contains(key)) {
            throw std::invalid_argument("template JSON: unknown field '" +
                                        key + "'");
        }
    }
    const auto scheme = scheme_from_string(j.at("scheme").get<std::string>());
    const auto entangler =
        entangler_from_string(j.at("entangler").get<std::string>());
    const auto topology =
        topology_from_string(j.at("topology").get<std::string>());
    const int n = j.at("num_qubits").get<int>();
    const int p = j.at("num_layers").get<int>();
    const auto initial =
        j.contains("initial_layer")
            ? initial_layer_from_string(j["initial_layer"].get<std::string>())
            : InitialLayer::SqrtHadamard;

    CircuitTemplate t = [&] {
        if (scheme == RotationScheme::Custom) {
            std::vector<GateKind> axes;
            for (const auto &a : j.at("axes")) {
                axes.push_back(gate_kind_from_string(a.get<std::string>()));
            }
            return CircuitTemplate::custom(n, p, std::move(axes), entangler,
                                           topology, initial);
        }
        return CircuitTemplate::build(n, p, scheme, entangler, topology,
                                      j.at("structure_seed")
                                          .get<std::uint64_t>())
            .with_initial_layer(initial);
    }();

    std::vector<bool> mask;
    for (const auto &b : j.at("active_mask")) {
        const int v = b.get<int>();
        if (v != 0 && v != 1) {
            throw std::invalid_argument("active_mask entries must be 0 or 1");
        }
        mask.push_back(v == 1);
    }
    return t.with_mask(std::move(mask));
}

json to_json(const CapacityReport &r) {
    return {{"effective_dimension", r.effective_dimension},
            {"parameter_dimension", r.parameter_dimension},
            {"redundancy", r.redundancy},
            {"rank_tolerance", r.rank_tolerance}};
}

json to_json(const SpectrumStats &s) {
    return {{"var_log_nonzero", s.var_log_nonzero},
            {"min_nonzero", s.min_nonzero},
            {"histogram",
             {{"bin_edges", s.histogram.bin_edges},
              {"counts", s.histogram.counts}}}};
}

json to_json(const PruneLog &log) {
    return {{"removed_indices", log.removed_indices},
            {"iterations", log.iterations},
            {"rejected_candidates", log.rejected_candidates},
            {"initial_M", log.initial_M},
            {"final_M", log.final_M},
            {"D_C_before", log.D_C_before},
            {"D_C_after", log.D_C_after}};
}

} // namespace qgeo
