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
#include <utility>
#include <vector>

#include "qgeo/statevector.hpp"

namespace qgeo {

/// Layout of the two-qubit gates inside one entangling layer.
enum class Topology : std::uint8_t {
    Chain, ///< (n, n+1) for n = 0..N-2, open boundary
    All,   ///< every (i, j) with i < j, lexicographic
    Alt,   ///< (0,1),(2,3),... on even layers; (1,2),(3,4),... on odd layers
};

enum class RotationScheme : std::uint8_t {
    RandXYZ, ///< one axis per slot drawn from {x, y, z}
    RandXYW, ///< one axis per slot drawn from {x, y, (x+y)/sqrt(2)}
    FixedX,
    FixedY,
    FixedZ,
    ZXZ,    ///< three slots (z, x, z) per qubit and layer
    Custom, ///< axes supplied explicitly
};

/// Fixed gate layer applied to |0...0> before the first rotation layer.
enum class InitialLayer : std::uint8_t { SqrtHadamard, Hadamard, None };

[[nodiscard]] std::string_view to_string(Topology t);
[[nodiscard]] std::string_view to_string(RotationScheme s);
[[nodiscard]] std::string_view to_string(InitialLayer l);
[[nodiscard]] Topology topology_from_string(std::string_view name);
[[nodiscard]] RotationScheme scheme_from_string(std::string_view name);
[[nodiscard]] InitialLayer initial_layer_from_string(std::string_view name);
/// Accepts only the three entangler names.
[[nodiscard]] GateKind entangler_from_string(std::string_view name);

struct RotationSlot {
    int layer = 0;
    int qubit = 0;
    GateKind axis = GateKind::RotZ;

    friend bool operator==(const RotationSlot &, const RotationSlot &) = default;
};

/**
 * @brief Structure of a layered hardware-efficient circuit.
 *
 * The state is prod_{l=p..1} [W_l V_l(theta_l)] L0 |0...0>, where L0 is the
 * initial layer (sqrt(H) on every qubit by default), V_l holds the rotation
 * slots of layer l and W_l its entangling gates.
 *
 * Slots are indexed layer-major: slot = l * b + r, with b rotation slots per
 * layer. For ZXZ the three slots of qubit n sit at r = 3n, 3n+1, 3n+2.
 * Pruned slots stay in the slot list with their mask bit cleared, so slot
 * indices are stable across pruning.
 *
 * Immutable once built.
 */
class CircuitTemplate {
  public:
    static CircuitTemplate build(int num_qubits, int num_layers,
                                 RotationScheme scheme, GateKind entangler,
                                 Topology topology,
                                 std::uint64_t structure_seed);

    /// Template with explicit axes; axes.size() must be a positive multiple
    /// of num_qubits * num_layers. Each qubit gets axes.size() / (N p)
    /// consecutive slots per layer.
    static CircuitTemplate custom(int num_qubits, int num_layers,
                                  std::vector<GateKind> axes,
                                  GateKind entangler, Topology topology,
                                  InitialLayer initial_layer);

    [[nodiscard]] CircuitTemplate
    with_initial_layer(InitialLayer layer) const;
    /// Copy with the given mask (one entry per slot).
    [[nodiscard]] CircuitTemplate with_mask(std::vector<bool> mask) const;
    /// Copy with the listed slots masked out.
    [[nodiscard]] CircuitTemplate
    without_slots(std::span<const int> slots) const;

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] int num_layers() const noexcept { return num_layers_; }
    [[nodiscard]] RotationScheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] GateKind entangler() const noexcept { return entangler_; }
    [[nodiscard]] Topology topology() const noexcept { return topology_; }
    [[nodiscard]] InitialLayer initial_layer() const noexcept {
        return initial_layer_;
    }
    [[nodiscard]] std::uint64_t structure_seed() const noexcept {
        return structure_seed_;
    }

    /// Rotation slots per layer (b).
    [[nodiscard]] int slots_per_layer() const noexcept {
        return slots_per_layer_;
    }
    [[nodiscard]] int num_slots() const noexcept {
        return static_cast<int>(slots_.size());
    }
    [[nodiscard]] std::span<const RotationSlot> slots() const noexcept {
        return slots_;
    }
    [[nodiscard]] const std::vector<bool> &active_mask() const noexcept {
        return mask_;
    }
    [[nodiscard]] bool is_active(int slot) const { return mask_.at(slot); }

    /// M, the number of active slots.
    [[nodiscard]] int parameter_count() const noexcept {
        return static_cast<int>(active_.size());
    }
    /// Slot index of each parameter, ascending.
    [[nodiscard]] std::span<const int> active_slots() const noexcept {
        return active_;
    }

    /// Entangler (a, b) pairs of layer l in application order; for CNOT,
    /// a is the control.
    [[nodiscard]] std::vector<std::pair<int, int>>
    entangler_pairs(int layer) const;

    friend bool operator==(const CircuitTemplate &,
                           const CircuitTemplate &) = default;

  private:
    CircuitTemplate() = default;
    void refresh_active();

    int num_qubits_ = 0;
    int num_layers_ = 0;
    RotationScheme scheme_ = RotationScheme::RandXYZ;
    GateKind entangler_ = GateKind::CNOT;
    Topology topology_ = Topology::Chain;
    InitialLayer initial_layer_ = InitialLayer::SqrtHadamard;
    std::uint64_t structure_seed_ = 0;
    int slots_per_layer_ = 0;
    std::vector<RotationSlot> slots_;
    std::vector<bool> mask_;
    std::vector<int> active_;
};

/// Rotation angles in radians, one per active slot.
struct ParameterVector {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values[i]; }
    [[nodiscard]] double &operator[](std::size_t i) { return values[i]; }

    friend bool operator==(const ParameterVector &,
                           const ParameterVector &) = default;
};

/// U(theta)|0...0>. Masked slots act as identity.
[[nodiscard]] StateVector prepare_state(const CircuitTemplate &tmpl,
                                        const ParameterVector &theta);

/// d|psi>/d theta for the parameter living in @p slot: the circuit with
/// -(i/2) sigma inserted at that slot. Norm is exactly 1/2.
[[nodiscard]] StateVector tangent_state(const CircuitTemplate &tmpl,
                                        const ParameterVector &theta,
                                        int slot);

struct TangentBundle {
    StateVector state;
    std::vector<StateVector> tangents; ///< one per parameter, slot order
};

/// |psi> and all M tangents in a single forward pass: each tangent is
/// spawned at its slot and then carried through the remaining gates.
[[nodiscard]] TangentBundle batch_tangent_states(const CircuitTemplate &tmpl,
                                                 const ParameterVector &theta);

/// M i.i.d. angles uniform on [0, 2 pi).
[[nodiscard]] ParameterVector sample_parameters(const CircuitTemplate &tmpl,
                                                std::uint64_t rng_seed);

/// theta scaled elementwise by @p a.
[[nodiscard]] ParameterVector scaled(const ParameterVector &theta, double a);

/// All-zero angles for @p tmpl.
[[nodiscard]] ParameterVector zero_parameters(const CircuitTemplate &tmpl);

} // namespace qgeo
