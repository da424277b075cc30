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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace qgeo {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<Complex, 4>;

/// Largest register the simulator accepts. 2^26 amplitudes is 1 GiB.
inline constexpr int kMaxQubits = 26;

enum class Pauli : std::uint8_t { X, Y, Z };

/**
 * @brief Gates that appear in the layered circuits.
 *
 * Rotations carry one angle; RotW rotates about the (x+y)/sqrt(2) axis.
 * Entanglers are parameter-free two-qubit gates.
 */
enum class GateKind : std::uint8_t {
    RotX,
    RotY,
    RotZ,
    RotW,
    SqrtHadamard,
    CNOT,
    CPHASE,
    SqrtISwap,
};

[[nodiscard]] constexpr bool is_rotation(GateKind kind) noexcept {
    return kind == GateKind::RotX || kind == GateKind::RotY ||
           kind == GateKind::RotZ || kind == GateKind::RotW;
}

[[nodiscard]] constexpr bool is_entangler(GateKind kind) noexcept {
    return kind == GateKind::CNOT || kind == GateKind::CPHASE ||
           kind == GateKind::SqrtISwap;
}

[[nodiscard]] std::string_view to_string(GateKind kind);
[[nodiscard]] GateKind gate_kind_from_string(std::string_view name);

/// Pauli (or Pauli-like) generator sigma of a rotation exp(-i angle sigma / 2).
[[nodiscard]] Mat2 rotation_generator(GateKind axis);
[[nodiscard]] Mat2 rotation_matrix(GateKind axis, double angle);
[[nodiscard]] Mat2 pauli_matrix(Pauli p);
[[nodiscard]] Mat2 hadamard_matrix();
/// Principal square root of the Hadamard matrix: P+ + i P-.
[[nodiscard]] Mat2 sqrt_hadamard_matrix();

/**
 * @brief Dense pure state of N qubits.
 *
 * Qubit 0 is the least significant bit of the basis index. Gate kernels
 * update the amplitudes in place over strided pairs (one-qubit gates) and
 * quadruples (two-qubit gates).
 */
class StateVector {
  public:
    /// |0...0> on @p num_qubits qubits.
    explicit StateVector(int num_qubits);

    /// Wraps an amplitude array whose length must be a power of two (>= 2).
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }

    [[nodiscard]] const Complex &operator[](std::size_t i) const {
        return amps_[i];
    }
    [[nodiscard]] Complex &operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    void apply_matrix(const Mat2 &m, int qubit);
    void apply_rotation(GateKind axis, int qubit, double angle);
    void apply_entangler(GateKind kind, int qubit_a, int qubit_b);
    void apply_sqrt_hadamard(int qubit);
    void apply_hadamard(int qubit);
    void apply_pauli(Pauli p, int qubit);
    void scale(Complex factor) noexcept;

  private:
    StateVector() = default;
    void check_qubit(int qubit) const;

    int num_qubits_ = 0;
    std::vector<Complex> amps_;
};

[[nodiscard]] StateVector init_zero_state(int num_qubits);

/// <a|b>, conjugate-linear in @p a.
[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);

/// Tensor product of single-qubit Paulis; qubits absent from the map are
/// identity.
class PauliString {
  public:
    PauliString() = default;
    PauliString(std::initializer_list<std::pair<const int, Pauli>> factors);

    PauliString &set(int qubit, Pauli p);
    [[nodiscard]] const std::map<int, Pauli> &factors() const noexcept {
        return factors_;
    }
    [[nodiscard]] bool empty() const noexcept { return factors_.empty(); }
    /// Largest qubit index referenced, or -1 for the identity string.
    [[nodiscard]] int max_qubit() const noexcept;

  private:
    std::map<int, Pauli> factors_;
};

/// Returns P|state>.
[[nodiscard]] StateVector apply_pauli_string(const StateVector &state,
                                             const PauliString &p);

/// <state|P|state>, real for Hermitian P.
[[nodiscard]] double pauli_expectation(const StateVector &state,
                                       const PauliString &p);

} // namespace qgeo
