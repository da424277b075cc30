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
#include "qgeo/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgeo {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Inserts a zero bit at position `bit` of `i`.
inline std::size_t insert_zero_bit(std::size_t i, int bit) noexcept {
    const std::size_t low = i & ((std::size_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

} // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RotX:
        return "x";
    case GateKind::RotY:
        return "y";
    case GateKind::RotZ:
        return "z";
    case GateKind::RotW:
        return "w";
    case GateKind::SqrtHadamard:
        return "sqrt_hadamard";
    case GateKind::CNOT:
        return "cnot";
    case GateKind::CPHASE:
        return "cphase";
    case GateKind::SqrtISwap:
        return "sqrt_iswap";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    for (auto k : {GateKind::RotX, GateKind::RotY, GateKind::RotZ,
                   GateKind::RotW, GateKind::SqrtHadamard, GateKind::CNOT,
                   GateKind::CPHASE, GateKind::SqrtISwap}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) +
                                "'");
}

Mat2 pauli_matrix(Pauli p) {
    switch (p) {
    case Pauli::X:
        return {0.0, 1.0, 1.0, 0.0};
    case Pauli::Y:
        return {0.0, -kI, kI, 0.0};
    case Pauli::Z:
        return {1.0, 0.0, 0.0, -1.0};
    }
    return {};
}

Mat2 rotation_generator(GateKind axis) {
    switch (axis) {
    case GateKind::RotX:
        return pauli_matrix(Pauli::X);
    case GateKind::RotY:
        return pauli_matrix(Pauli::Y);
    case GateKind::RotZ:
        return pauli_matrix(Pauli::Z);
    case GateKind::RotW:
        return {0.0, Complex{kInvSqrt2, -kInvSqrt2},
                Complex{kInvSqrt2, kInvSqrt2}, 0.0};
    default:
        throw std::invalid_argument("gate kind is not a rotation");
    }
}

Mat2 rotation_matrix(GateKind axis, double angle) {
    // exp(-i a s / 2) = cos(a/2) I - i sin(a/2) s, valid since s^2 = I.
    const Mat2 s = rotation_generator(axis);
    const double c = std::cos(angle / 2);
    const Complex mis = -kI * std::sin(angle / 2);
    return {c + mis * s[0], mis * s[1], mis * s[2], c + mis * s[3]};
}

Mat2 hadamard_matrix() {
    return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
}

Mat2 sqrt_hadamard_matrix() {
    // ((1+i)/2) I + ((1-i)/2) H
    const Complex a{0.5, 0.5};
    const Complex b = Complex{0.5, -0.5} * kInvSqrt2;
    return {a + b, b, b, a - b};
}

StateVector::StateVector(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "num_qubits must be in [1, " + std::to_string(kMaxQubits) +
            "], got " + std::to_string(num_qubits));
    }
    num_qubits_ = num_qubits;
    amps_.assign(std::size_t{1} << num_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n) ||
        std::countr_zero(n) > kMaxQubits) {
        throw std::invalid_argument(
            "amplitude count must be a power of two in [2, 2^" +
            std::to_string(kMaxQubits) + "]");
    }
    StateVector s;
    s.num_qubits_ = std::countr_zero(n);
    s.amps_ = std::move(amplitudes);
    return s;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply_matrix(const Mat2 &m, int qubit) {
    check_qubit(qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t half = amps_.size() / 2;
    Complex *data = amps_.data();
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero_bit(k, qubit);
        const std::size_t i1 = i0 | stride;
        const Complex v0 = data[i0];
        const Complex v1 = data[i1];
        data[i0] = m[0] * v0 + m[1] * v1;
        data[i1] = m[2] * v0 + m[3] * v1;
    }
}

void StateVector::apply_rotation(GateKind axis, int qubit, double angle) {
    if (!is_rotation(axis)) {
        throw std::invalid_argument("apply_rotation requires a rotation kind");
    }
    apply_matrix(rotation_matrix(axis, angle), qubit);
}

void StateVector::apply_sqrt_hadamard(int qubit) {
    apply_matrix(sqrt_hadamard_matrix(), qubit);
}

void StateVector::apply_hadamard(int qubit) {
    apply_matrix(hadamard_matrix(), qubit);
}

void StateVector::apply_pauli(Pauli p, int qubit) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    Complex *data = amps_.data();
    const std::size_t n = amps_.size();
    switch (p) {
    case Pauli::X:
        for (std::size_t i = 0; i < n; ++i) {
            if (!(i & mask)) {
                std::swap(data[i], data[i | mask]);
            }
        }
        break;
    case Pauli::Y:
        for (std::size_t i = 0; i < n; ++i) {
            if (!(i & mask)) {
                const Complex v0 = data[i];
                data[i] = -kI * data[i | mask];
                data[i | mask] = kI * v0;
            }
        }
        break;
    case Pauli::Z:
        for (std::size_t i = 0; i < n; ++i) {
            if (i & mask) {
                data[i] = -data[i];
            }
        }
        break;
    }
}

void StateVector::apply_entangler(GateKind kind, int qubit_a, int qubit_b) {
    check_qubit(qubit_a);
    check_qubit(qubit_b);
    if (qubit_a == qubit_b) {
        throw std::invalid_argument("entangler qubits must differ");
    }
    if (!is_entangler(kind)) {
        throw std::invalid_argument("apply_entangler requires CNOT, CPHASE "
                                    "or SqrtISwap");
    }
    const int lo = std::min(qubit_a, qubit_b);
    const int hi = std::max(qubit_a, qubit_b);
    const std::size_t ma = std::size_t{1} << qubit_a;
    const std::size_t mb = std::size_t{1} << qubit_b;
    const std::size_t quarter = amps_.size() / 4;
    Complex *data = amps_.data();

    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t i00 = insert_zero_bit(insert_zero_bit(k, lo), hi);
        switch (kind) {
        case GateKind::CNOT:
            // control a, target b
            std::swap(data[i00 | ma], data[i00 | ma | mb]);
            break;
        case GateKind::CPHASE:
            data[i00 | ma | mb] = -data[i00 | ma | mb];
            break;
        case GateKind::SqrtISwap: {
            const Complex va = data[i00 | ma];
            const Complex vb = data[i00 | mb];
            data[i00 | ma] = kInvSqrt2 * va + kI * kInvSqrt2 * vb;
            data[i00 | mb] = kI * kInvSqrt2 * va + kInvSqrt2 * vb;
            break;
        }
        default:
            break;
        }
    }
}

void StateVector::scale(Complex factor) noexcept {
    for (auto &a : amps_) {
        a *= factor;
    }
}

StateVector init_zero_state(int num_qubits) { return StateVector(num_qubits); }

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Complex acc{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

PauliString::PauliString(
    std::initializer_list<std::pair<const int, Pauli>> factors)
    : factors_(factors) {
    for (const auto &[q, p] : factors_) {
        if (q < 0) {
            throw std::out_of_range("negative qubit index in PauliString");
        }
    }
}

PauliString &PauliString::set(int qubit, Pauli p) {
    if (qubit < 0) {
        throw std::out_of_range("negative qubit index in PauliString");
    }
    factors_[qubit] = p;
    return *this;
}

int PauliString::max_qubit() const noexcept {
    return factors_.empty() ? -1 : factors_.rbegin()->first;
}

namespace {

struct PauliMasks {
    std::size_t flip = 0;  // X or Y
    std::size_t phase = 0; // Z or Y
    int num_y = 0;
};

PauliMasks masks_for(const PauliString &p, int num_qubits) {
    if (p.max_qubit() >= num_qubits) {
        throw std::out_of_range("PauliString acts on qubit " +
                                std::to_string(p.max_qubit()) +
                                " of a " + std::to_string(num_qubits) +
                                "-qubit state");
    }
    PauliMasks m;
    for (const auto &[q, op] : p.factors()) {
        const std::size_t bit = std::size_t{1} << q;
        if (op != Pauli::Z) {
            m.flip |= bit;
        }
        if (op != Pauli::X) {
            m.phase |= bit;
        }
        if (op == Pauli::Y) {
            ++m.num_y;
        }
    }
    return m;
}

// i^k
Complex i_power(int k) {
    switch (k & 3) {
    case 0:
        return 1.0;
    case 1:
        return kI;
    case 2:
        return -1.0;
    default:
        return -kI;
    }
}

} // namespace

// P|b> = i^{#Y} (-1)^{|b & phase|} |b ^ flip>
StateVector apply_pauli_string(const StateVector &state, const PauliString &p) {
    const PauliMasks m = masks_for(p, state.num_qubits());
    const Complex global = i_power(m.num_y);
    std::vector<Complex> out(state.dim());
    const auto in = state.amplitudes();
    for (std::size_t b = 0; b < in.size(); ++b) {
        const bool odd = std::popcount(b & m.phase) & 1;
        out[b ^ m.flip] = odd ? -global * in[b] : global * in[b];
    }
    return StateVector::from_amplitudes(std::move(out));
}

double pauli_expectation(const StateVector &state, const PauliString &p) {
    const PauliMasks m = masks_for(p, state.num_qubits());
    const auto a = state.amplitudes();
    Complex acc{};
    for (std::size_t b = 0; b < a.size(); ++b) {
        const bool odd = std::popcount(b & m.phase) & 1;
        const Complex term = std::conj(a[b ^ m.flip]) * a[b];
        acc += odd ? -term : term;
    }
    return (i_power(m.num_y) * acc).real();
}

} // namespace qgeo
