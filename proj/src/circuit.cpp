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
#include "qgeo/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qgeo/rng.hpp"

namespace qgeo {

namespace {

template <class Enum, std::size_t K>
Enum lookup(std::string_view name, const std::array<Enum, K> &values,
            const char *what) {
    for (Enum v : values) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw std::invalid_argument(std::string("unknown ") + what + " '" +
                                std::string(name) + "'");
}

} // namespace

std::string_view to_string(Topology t) {
    switch (t) {
    case Topology::Chain:
        return "chain";
    case Topology::All:
        return "all";
    case Topology::Alt:
        return "alt";
    }
    return "?";
}

std::string_view to_string(RotationScheme s) {
    switch (s) {
    case RotationScheme::RandXYZ:
        return "rand_xyz";
    case RotationScheme::RandXYW:
        return "rand_xyw";
    case RotationScheme::FixedX:
        return "x";
    case RotationScheme::FixedY:
        return "y";
    case RotationScheme::FixedZ:
        return "z";
    case RotationScheme::ZXZ:
        return "zxz";
    case RotationScheme::Custom:
        return "custom";
    }
    return "?";
}

std::string_view to_string(InitialLayer l) {
    switch (l) {
    case InitialLayer::SqrtHadamard:
        return "sqrt_hadamard";
    case InitialLayer::Hadamard:
        return "hadamard";
    case InitialLayer::None:
        return "none";
    }
    return "?";
}

Topology topology_from_string(std::string_view name) {
    return lookup(name,
                  std::array{Topology::Chain, Topology::All, Topology::Alt},
                  "topology");
}

RotationScheme scheme_from_string(std::string_view name) {
    return lookup(
        name,
        std::array{RotationScheme::RandXYZ, RotationScheme::RandXYW,
                   RotationScheme::FixedX, RotationScheme::FixedY,
                   RotationScheme::FixedZ, RotationScheme::ZXZ,
                   RotationScheme::Custom},
        "rotation scheme");
}

InitialLayer initial_layer_from_string(std::string_view name) {
    return lookup(name,
                  std::array{InitialLayer::SqrtHadamard,
                             InitialLayer::Hadamard, InitialLayer::None},
                  "initial layer");
}

GateKind entangler_from_string(std::string_view name) {
    return lookup(name,
                  std::array{GateKind::CNOT, GateKind::CPHASE,
                             GateKind::SqrtISwap},
                  "entangler");
}

namespace {

void check_shape(int num_qubits, int num_layers, GateKind entangler) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("num_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    if (num_layers < 1) {
        throw std::invalid_argument("num_layers must be >= 1, got " +
                                    std::to_string(num_layers));
    }
    if (!is_entangler(entangler)) {
        throw std::invalid_argument("entangler must be cnot, cphase or "
                                    "sqrt_iswap");
    }
}

} // namespace

CircuitTemplate CircuitTemplate::build(int num_qubits, int num_layers,
                                       RotationScheme scheme,
                                       GateKind entangler, Topology topology,
                                       std::uint64_t structure_seed) {
    check_shape(num_qubits, num_layers, entangler);
    if (scheme == RotationScheme::Custom) {
        throw std::invalid_argument(
            "custom scheme requires CircuitTemplate::custom");
    }
    CircuitTemplate t;
    t.num_qubits_ = num_qubits;
    t.num_layers_ = num_layers;
    t.scheme_ = scheme;
    t.entangler_ = entangler;
    t.topology_ = topology;
    t.structure_seed_ = structure_seed;
    t.slots_per_layer_ =
        scheme == RotationScheme::ZXZ ? 3 * num_qubits : num_qubits;

    Rng rng(splitmix64(structure_seed));
    const std::array<GateKind, 3> xyz{GateKind::RotX, GateKind::RotY,
                                      GateKind::RotZ};
    const std::array<GateKind, 3> xyw{GateKind::RotX, GateKind::RotY,
                                      GateKind::RotW};
    t.slots_.reserve(static_cast<std::size_t>(t.slots_per_layer_) *
                     num_layers);
    for (int l = 0; l < num_layers; ++l) {
        for (int n = 0; n < num_qubits; ++n) {
            switch (scheme) {
            case RotationScheme::RandXYZ:
                t.slots_.push_back({l, n, xyz[rng.below(3)]});
                break;
            case RotationScheme::RandXYW:
                t.slots_.push_back({l, n, xyw[rng.below(3)]});
                break;
            case RotationScheme::FixedX:
                t.slots_.push_back({l, n, GateKind::RotX});
                break;
            case RotationScheme::FixedY:
                t.slots_.push_back({l, n, GateKind::RotY});
                break;
            case RotationScheme::FixedZ:
                t.slots_.push_back({l, n, GateKind::RotZ});
                break;
            case RotationScheme::ZXZ:
                t.slots_.push_back({l, n, GateKind::RotZ});
                t.slots_.push_back({l, n, GateKind::RotX});
                t.slots_.push_back({l, n, GateKind::RotZ});
                break;
            case RotationScheme::Custom:
                break;
            }
        }
    }
    t.mask_.assign(t.slots_.size(), true);
    t.refresh_active();
    return t;
}

CircuitTemplate CircuitTemplate::custom(int num_qubits, int num_layers,
                                        std::vector<GateKind> axes,
                                        GateKind entangler, Topology topology,
                                        InitialLayer initial_layer) {
    check_shape(num_qubits, num_layers, entangler);
    const std::size_t per_layer_qubit =
        static_cast<std::size_t>(num_qubits) * num_layers;
    if (axes.empty() || axes.size() % per_layer_qubit != 0) {
        throw std::invalid_argument(
            "custom axes must be a positive multiple of num_qubits * "
            "num_layers");
    }
    for (GateKind a : axes) {
        if (!is_rotation(a)) {
            throw std::invalid_argument("custom axes must be rotations");
        }
    }
    CircuitTemplate t;
    t.num_qubits_ = num_qubits;
    t.num_layers_ = num_layers;
    t.scheme_ = RotationScheme::Custom;
    t.entangler_ = entangler;
    t.topology_ = topology;
    t.initial_layer_ = initial_layer;
    const int per_qubit = static_cast<int>(axes.size() / per_layer_qubit);
    t.slots_per_layer_ = per_qubit * num_qubits;
    t.slots_.reserve(axes.size());
    for (std::size_t s = 0; s < axes.size(); ++s) {
        const int l = static_cast<int>(s) / t.slots_per_layer_;
        const int n = (static_cast<int>(s) % t.slots_per_layer_) / per_qubit;
        t.slots_.push_back({l, n, axes[s]});
    }
    t.mask_.assign(t.slots_.size(), true);
    t.refresh_active();
    return t;
}

CircuitTemplate CircuitTemplate::with_initial_layer(InitialLayer layer) const {
    CircuitTemplate t = *this;
    t.initial_layer_ = layer;
    return t;
}

CircuitTemplate CircuitTemplate::with_mask(std::vector<bool> mask) const {
    if (mask.size() != slots_.size()) {
        throw std::invalid_argument("mask length " +
                                    std::to_string(mask.size()) +
                                    " does not match slot count " +
                                    std::to_string(slots_.size()));
    }
    CircuitTemplate t = *this;
    t.mask_ = std::move(mask);
    t.refresh_active();
    return t;
}

CircuitTemplate
CircuitTemplate::without_slots(std::span<const int> slots) const {
    std::vector<bool> mask = mask_;
    for (int s : slots) {
        if (s < 0 || s >= num_slots()) {
            throw std::out_of_range("slot index " + std::to_string(s) +
                                    " out of range");
        }
        mask[s] = false;
    }
    return with_mask(std::move(mask));
}

void CircuitTemplate::refresh_active() {
    active_.clear();
    for (int s = 0; s < num_slots(); ++s) {
        if (mask_[s]) {
            active_.push_back(s);
        }
    }
}

std::vector<std::pair<int, int>> CircuitTemplate::entangler_pairs(
    int layer) const {
    std::vector<std::pair<int, int>> pairs;
    const int n = num_qubits_;
    switch (topology_) {
    case Topology::Chain:
        for (int q = 0; q + 1 < n; ++q) {
            pairs.emplace_back(q, q + 1);
        }
        break;
    case Topology::All:
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        break;
    case Topology::Alt:
        for (int q = layer % 2; q + 1 < n; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
        break;
    }
    return pairs;
}

namespace {

void apply_initial_layer(const CircuitTemplate &tmpl, StateVector &psi) {
    for (int q = 0; q < tmpl.num_qubits(); ++q) {
        switch (tmpl.initial_layer()) {
        case InitialLayer::SqrtHadamard:
            psi.apply_sqrt_hadamard(q);
            break;
        case InitialLayer::Hadamard:
            psi.apply_hadamard(q);
            break;
        case InitialLayer::None:
            break;
        }
    }
}

void check_theta(const CircuitTemplate &tmpl, const ParameterVector &theta) {
    if (theta.size() != static_cast<std::size_t>(tmpl.parameter_count())) {
        throw std::invalid_argument(
            "parameter vector has " + std::to_string(theta.size()) +
            " entries, template expects " +
            std::to_string(tmpl.parameter_count()));
    }
}

// Angle of every slot, 0 for masked slots.
std::vector<double> slot_angles(const CircuitTemplate &tmpl,
                                const ParameterVector &theta) {
    std::vector<double> angles(tmpl.num_slots(), 0.0);
    const auto active = tmpl.active_slots();
    for (std::size_t k = 0; k < active.size(); ++k) {
        angles[active[k]] = theta[k];
    }
    return angles;
}

/**
 * Walks the gate sequence. `on_rotation(slot, matrix)` is called for each
 * active slot and `on_entangler(a, b)` for every two-qubit gate.
 */
template <class OnRotation, class OnEntangler>
void walk(const CircuitTemplate &tmpl, const std::vector<double> &angles,
          OnRotation &&on_rotation, OnEntangler &&on_entangler) {
    const int b = tmpl.slots_per_layer();
    const auto slots = tmpl.slots();
    for (int l = 0; l < tmpl.num_layers(); ++l) {
        for (int s = l * b; s < (l + 1) * b; ++s) {
            if (tmpl.is_active(s)) {
                on_rotation(s, rotation_matrix(slots[s].axis, angles[s]));
            }
        }
        for (const auto &[qa, qb] : tmpl.entangler_pairs(l)) {
            on_entangler(qa, qb);
        }
    }
}

} // namespace

StateVector prepare_state(const CircuitTemplate &tmpl,
                          const ParameterVector &theta) {
    check_theta(tmpl, theta);
    StateVector psi(tmpl.num_qubits());
    apply_initial_layer(tmpl, psi);
    const auto slots = tmpl.slots();
    walk(
        tmpl, slot_angles(tmpl, theta),
        [&](int s, const Mat2 &m) { psi.apply_matrix(m, slots[s].qubit); },
        [&](int a, int b) { psi.apply_entangler(tmpl.entangler(), a, b); });
    return psi;
}

namespace {

// psi <- -(i/2) sigma psi
void insert_generator(StateVector &psi, const RotationSlot &slot) {
    const Mat2 g = rotation_generator(slot.axis);
    const Complex f{0.0, -0.5};
    psi.apply_matrix({f * g[0], f * g[1], f * g[2], f * g[3]}, slot.qubit);
}

} // namespace

StateVector tangent_state(const CircuitTemplate &tmpl,
                          const ParameterVector &theta, int slot) {
    check_theta(tmpl, theta);
    if (slot < 0 || slot >= tmpl.num_slots()) {
        throw std::out_of_range("slot " + std::to_string(slot) +
                                " out of range");
    }
    if (!tmpl.is_active(slot)) {
        throw std::invalid_argument("slot " + std::to_string(slot) +
                                    " is masked");
    }
    StateVector psi(tmpl.num_qubits());
    apply_initial_layer(tmpl, psi);
    const auto slots = tmpl.slots();
    walk(
        tmpl, slot_angles(tmpl, theta),
        [&](int s, const Mat2 &m) {
            psi.apply_matrix(m, slots[s].qubit);
            if (s == slot) {
                insert_generator(psi, slots[s]);
            }
        },
        [&](int a, int b) { psi.apply_entangler(tmpl.entangler(), a, b); });
    return psi;
}

TangentBundle batch_tangent_states(const CircuitTemplate &tmpl,
                                   const ParameterVector &theta) {
    check_theta(tmpl, theta);
    StateVector psi(tmpl.num_qubits());
    apply_initial_layer(tmpl, psi);
    std::vector<StateVector> tangents;
    tangents.reserve(tmpl.parameter_count());
    const auto slots = tmpl.slots();
    walk(
        tmpl, slot_angles(tmpl, theta),
        [&](int s, const Mat2 &m) {
            const int q = slots[s].qubit;
            psi.apply_matrix(m, q);
            for (auto &t : tangents) {
                t.apply_matrix(m, q);
            }
            // sigma commutes with its own rotation, so spawning after the
            // rotation matches the inserted-generator definition.
            tangents.push_back(psi);
            insert_generator(tangents.back(), slots[s]);
        },
        [&](int a, int b) {
            psi.apply_entangler(tmpl.entangler(), a, b);
            for (auto &t : tangents) {
                t.apply_entangler(tmpl.entangler(), a, b);
            }
        });
    return {std::move(psi), std::move(tangents)};
}

ParameterVector sample_parameters(const CircuitTemplate &tmpl,
                                  std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    ParameterVector theta;
    theta.values.resize(tmpl.parameter_count());
    for (auto &v : theta.values) {
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return theta;
}

ParameterVector scaled(const ParameterVector &theta, double a) {
    ParameterVector out = theta;
    for (auto &v : out.values) {
        v *= a;
    }
    return out;
}

ParameterVector zero_parameters(const CircuitTemplate &tmpl) {
    return ParameterVector{std::vector<double>(tmpl.parameter_count(), 0.0)};
}

} // namespace qgeo
