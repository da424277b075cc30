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

// Dense 2^N x 2^N reference simulator for tests. Every operator is built
// from literal 2x2 matrices and Kronecker products, independent of the
// strided kernels in the library.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgeo/circuit.hpp"
#include "qgeo/vqa.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat m2(C a, C b, C c, C d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Mat eye2() { return m2(1, 0, 0, 1); }
inline Mat px() { return m2(0, 1, 1, 0); }
inline Mat py() { return m2(0, C(0, -1), C(0, 1), 0); }
inline Mat pz() { return m2(1, 0, 0, -1); }
inline Mat proj0() { return m2(1, 0, 0, 0); }
inline Mat proj1() { return m2(0, 0, 0, 1); }

inline Mat hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return m2(s, s, s, -s);
}

/// ((1+i)/2) I + ((1-i)/2) H, the principal square root of H.
inline Mat sqrt_hadamard() {
    return C(0.5, 0.5) * eye2() + C(0.5, -0.5) * hadamard();
}

inline Mat generator(qgeo::GateKind axis) {
    switch (axis) {
    case qgeo::GateKind::RotX:
        return px();
    case qgeo::GateKind::RotY:
        return py();
    case qgeo::GateKind::RotZ:
        return pz();
    default:
        return (px() + py()) / std::sqrt(2.0);
    }
}

/// exp(-i angle sigma / 2) for a generator with sigma^2 = I.
inline Mat rotation(qgeo::GateKind axis, double angle) {
    return std::cos(angle / 2) * eye2() -
           C(0, 1) * std::sin(angle / 2) * generator(axis);
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

/// Embeds single-qubit operators; qubit 0 is the rightmost factor.
inline Mat embed(int n, const std::vector<std::pair<int, Mat>> &ops) {
    Mat out = Mat::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        Mat f = eye2();
        for (const auto &[qq, m] : ops) {
            if (qq == q) {
                f = m;
            }
        }
        out = kron(out, f);
    }
    return out;
}

inline Mat single(int n, int q, const Mat &m) { return embed(n, {{q, m}}); }

inline Mat cnot(int n, int control, int target) {
    return embed(n, {{control, proj0()}}) +
           embed(n, {{control, proj1()}, {target, px()}});
}

inline Mat cphase(int n, int a, int b) {
    const auto dim = Eigen::Index{1} << n;
    return Mat::Identity(dim, dim) -
           2.0 * embed(n, {{a, proj1()}, {b, proj1()}});
}

/// exp(i pi/4 K) with K = (XX + YY)/2, using K^3 = K.
inline Mat sqrt_iswap(int n, int a, int b) {
    const auto dim = Eigen::Index{1} << n;
    const Mat k = 0.5 * (embed(n, {{a, px()}, {b, px()}}) +
                         embed(n, {{a, py()}, {b, py()}}));
    const double t = M_PI / 4;
    return Mat::Identity(dim, dim) + C(0, std::sin(t)) * k +
           (std::cos(t) - 1.0) * k * k;
}

inline Mat entangler(qgeo::GateKind kind, int n, int a, int b) {
    switch (kind) {
    case qgeo::GateKind::CNOT:
        return cnot(n, a, b);
    case qgeo::GateKind::CPHASE:
        return cphase(n, a, b);
    default:
        return sqrt_iswap(n, a, b);
    }
}

inline std::vector<std::pair<int, int>> pairs(qgeo::Topology t, int n,
                                              int layer) {
    std::vector<std::pair<int, int>> out;
    switch (t) {
    case qgeo::Topology::Chain:
        for (int i = 0; i + 1 < n; ++i) {
            out.emplace_back(i, i + 1);
        }
        break;
    case qgeo::Topology::All:
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                out.emplace_back(i, j);
            }
        }
        break;
    case qgeo::Topology::Alt:
        for (int i = layer % 2; i + 1 < n; i += 2) {
            out.emplace_back(i, i + 1);
        }
        break;
    }
    return out;
}

/// Full unitary of the circuit at angles theta.
inline Mat circuit_unitary(const qgeo::CircuitTemplate &t,
                           const qgeo::ParameterVector &theta) {
    const int n = t.num_qubits();
    const auto dim = Eigen::Index{1} << n;
    Mat u = Mat::Identity(dim, dim);
    for (int q = 0; q < n; ++q) {
        if (t.initial_layer() == qgeo::InitialLayer::SqrtHadamard) {
            u = single(n, q, sqrt_hadamard()) * u;
        } else if (t.initial_layer() == qgeo::InitialLayer::Hadamard) {
            u = single(n, q, hadamard()) * u;
        }
    }
    const auto slots = t.slots();
    std::size_t k = 0;
    const int b = t.slots_per_layer();
    for (int l = 0; l < t.num_layers(); ++l) {
        for (int s = l * b; s < (l + 1) * b; ++s) {
            if (t.is_active(s)) {
                u = single(n, slots[s].qubit,
                           rotation(slots[s].axis, theta[k++])) *
                    u;
            }
        }
        for (auto [a, c] : pairs(t.topology(), n, l)) {
            u = entangler(t.entangler(), n, a, c) * u;
        }
    }
    return u;
}

inline Vec state(const qgeo::CircuitTemplate &t,
                 const qgeo::ParameterVector &theta) {
    const auto dim = Eigen::Index{1} << t.num_qubits();
    Vec zero = Vec::Zero(dim);
    zero(0) = 1.0;
    return circuit_unitary(t, theta) * zero;
}

inline Mat pauli_string(int n, const qgeo::PauliString &p) {
    std::vector<std::pair<int, Mat>> ops;
    for (const auto &[q, f] : p.factors()) {
        ops.emplace_back(q, f == qgeo::Pauli::X   ? px()
                            : f == qgeo::Pauli::Y ? py()
                                                  : pz());
    }
    return embed(n, ops);
}

inline Mat hamiltonian(int n, const qgeo::Hamiltonian &h) {
    const auto dim = Eigen::Index{1} << n;
    Mat out = Mat::Zero(dim, dim);
    for (const auto &term : h.terms) {
        out += term.coefficient * pauli_string(n, term.op);
    }
    return out;
}

inline Vec to_vec(const qgeo::StateVector &s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline double max_abs_diff(const Vec &a, const Vec &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace oracle
