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

#include <json.hpp>

#include "qgeo/circuit.hpp"
#include "qgeo/pruning.hpp"
#include "qgeo/qfi.hpp"

namespace qgeo {

/**
 * Template document: num_qubits, num_layers, scheme, entangler, topology,
 * structure_seed, active_mask (0/1 array). Axes are recomputed from the
 * seed on load. Two optional keys appear only when needed: initial_layer
 * (when not sqrt_hadamard) and axes (custom scheme only).
 */
[[nodiscard]] nlohmann::json to_json(const CircuitTemplate &t);
[[nodiscard]] CircuitTemplate template_from_json(const nlohmann::json &j);

[[nodiscard]] nlohmann::json to_json(const CapacityReport &r);
[[nodiscard]] nlohmann::json to_json(const SpectrumStats &s);
[[nodiscard]] nlohmann::json to_json(const PruneLog &log);

} // namespace qgeo
