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
#include "qgeo/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qgeo/rng.hpp"

namespace qgeo {

QfiMatrix qfi_from_tangents(const TangentBundle &bundle) {
    const auto m = static_cast<Eigen::Index>(bundle.tangents.size());
    const auto dim = static_cast<Eigen::Index>(bundle.state.dim());
    Eigen::MatrixXcd t(dim, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto amps = bundle.tangents[k].amplitudes();
        t.col(k) = Eigen::Map<const Eigen::VectorXcd>(amps.data(), dim);
    }
    const auto psi_amps = bundle.state.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi(psi_amps.data(), dim);

    // overlap_i = <d_i psi|psi>
    const Eigen::VectorXcd overlap = t.adjoint() * psi;
    Eigen::MatrixXcd gram(m, m);
    gram.setZero();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(t.adjoint());
    gram.triangularView<Eigen::StrictlyUpper>() =
        gram.adjoint().triangularView<Eigen::StrictlyUpper>();

    QfiMatrix f;
    f.entries = (gram - overlap * overlap.adjoint()).real();
    f.entries = 0.5 * (f.entries + f.entries.transpose()).eval();
    return f;
}

QfiMatrix compute_qfi(const CircuitTemplate &tmpl,
                      const ParameterVector &theta) {
    if (tmpl.parameter_count() < 1) {
        throw std::invalid_argument("compute_qfi requires at least one "
                                    "active parameter");
    }
    return qfi_from_tangents(batch_tangent_states(tmpl, theta));
}

Spectrum eigendecompose(const QfiMatrix &f) {
    const Eigen::MatrixXd &a = f.entries;
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("eigendecompose: matrix is not square");
    }
    if (a.size() == 0) {
        return {};
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw std::invalid_argument("eigendecompose: matrix is not symmetric "
                                    "(max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        // The implicit QL sweep only deflates subdiagonal entries near the
        // smallest normal double, so on rank-deficient metrics it can stall
        // on round-off sized couplings between zero eigenvalues. Deflate
        // those at eps * |A| and solve the tridiagonal problem directly.
        Eigen::Tridiagonalization<Eigen::MatrixXd> tri(a);
        Eigen::VectorXd diag = tri.diagonal();
        Eigen::VectorXd sub = tri.subDiagonal();
        const double floor = std::numeric_limits<double>::epsilon() *
                             a.cwiseAbs().rowwise().sum().maxCoeff();
        sub = sub.unaryExpr(
            [floor](double v) { return std::abs(v) <= floor ? 0.0 : v; });
        solver.computeFromTridiagonal(diag, sub);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("eigendecompose: solver did not converge");
        }
        const Eigen::MatrixXd q = tri.matrixQ();
        Spectrum s;
        s.eigenvalues = solver.eigenvalues().reverse();
        s.eigenvectors = (q * solver.eigenvectors()).rowwise().reverse();
        return s;
    }
    // Eigen sorts ascending.
    Spectrum s;
    s.eigenvalues = solver.eigenvalues().reverse();
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return s;
}

void require_psd(const Spectrum &spec) {
    if (spec.size() == 0) {
        return;
    }
    const double top = std::max(1.0, spec.eigenvalues(0));
    const double low = spec.eigenvalues(spec.size() - 1);
    if (low < kPsdFloor * top) {
        throw NumericalGuardError("metric is not positive semidefinite "
                                  "(smallest eigenvalue " +
                                  std::to_string(low) + ")");
    }
}

double rank_threshold(const Spectrum &spec, double rank_tolerance) {
    const double top = spec.size() > 0 ? spec.eigenvalues(0) : 0.0;
    return rank_tolerance * std::max(top, 0.25);
}

int effective_dimension(const Spectrum &spec, double rank_tolerance) {
    const double cut = rank_threshold(spec, rank_tolerance);
    return static_cast<int>((spec.eigenvalues.array() > cut).count());
}

bool DimensionEstimate::consistent() const {
    return std::all_of(samples.begin(), samples.end(),
                       [&](int v) { return v == value; });
}

DimensionEstimate parameter_dimension(const CircuitTemplate &tmpl,
                                      int num_samples, std::uint64_t seed,
                                      double rank_tolerance) {
    if (num_samples < 1) {
        throw std::invalid_argument("parameter_dimension: num_samples must "
                                    "be >= 1");
    }
    DimensionEstimate est;
    for (int i = 0; i < num_samples; ++i) {
        const auto theta = sample_parameters(
            tmpl, derive_seed(seed, stream::kDimensionSamples, i));
        const int g =
            effective_dimension(eigendecompose(compute_qfi(tmpl, theta)),
                                rank_tolerance);
        est.samples.push_back(g);
        est.value = std::max(est.value, g);
    }
    return est;
}

double redundancy(int num_params, int dimension) {
    if (num_params < 1 || dimension < 0 || dimension > num_params) {
        throw std::invalid_argument(
            "redundancy requires 0 <= D_C <= M and M >= 1 (M=" +
            std::to_string(num_params) +
            ", D_C=" + std::to_string(dimension) + ")");
    }
    return static_cast<double>(num_params - dimension) / num_params;
}

CapacityReport capacity_report(const CircuitTemplate &tmpl,
                               const ParameterVector &theta, int num_samples,
                               std::uint64_t seed, double rank_tolerance) {
    CapacityReport r;
    r.rank_tolerance = rank_tolerance;
    r.effective_dimension = effective_dimension(
        eigendecompose(compute_qfi(tmpl, theta)), rank_tolerance);
    r.parameter_dimension =
        parameter_dimension(tmpl, num_samples, seed, rank_tolerance).value;
    r.redundancy = redundancy(tmpl.parameter_count(), r.parameter_dimension);
    return r;
}

double predict_transition_depth(double redundancy_c, int num_qubits,
                                int slots_per_layer) {
    if (redundancy_c < 0.0 || redundancy_c >= 1.0) {
        throw std::invalid_argument("R_C must be in [0, 1)");
    }
    if (slots_per_layer < 1) {
        throw std::invalid_argument("slots per layer must be >= 1");
    }
    const double max_dim = std::ldexp(1.0, num_qubits + 1) - 2.0;
    return (1.0 - redundancy_c) * max_dim / slots_per_layer;
}

Histogram make_histogram(std::span<const double> values, int num_bins) {
    if (num_bins < 1) {
        throw std::invalid_argument("histogram needs at least one bin");
    }
    Histogram h;
    h.counts.assign(num_bins, 0);
    if (values.empty()) {
        h.bin_edges.assign(num_bins + 1, 0.0);
        return h;
    }
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (hi - lo <= 0.0) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / num_bins;
    h.bin_edges.resize(num_bins + 1);
    for (int i = 0; i <= num_bins; ++i) {
        h.bin_edges[i] = lo + width * i;
    }
    h.bin_edges.back() = hi;
    for (double v : values) {
        int bin = static_cast<int>((v - lo) / width);
        bin = std::clamp(bin, 0, num_bins - 1);
        ++h.counts[bin];
    }
    return h;
}

std::vector<double> nonzero_eigenvalues(const Spectrum &spec,
                                        double rank_tolerance) {
    const double cut = rank_threshold(spec, rank_tolerance);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (spec.eigenvalues(i) > cut) {
            out.push_back(spec.eigenvalues(i));
        }
    }
    return out;
}

SpectrumStats spectrum_stats(const Spectrum &spec, double rank_tolerance,
                             int num_bins) {
    const std::vector<double> nz = nonzero_eigenvalues(spec, rank_tolerance);
    if (nz.empty()) {
        throw std::invalid_argument("spectrum_stats: no nonzero eigenvalues");
    }
    SpectrumStats st;
    st.min_nonzero = nz.back();

    double mean = 0.0;
    for (double v : nz) {
        mean += std::log(v);
    }
    mean /= static_cast<double>(nz.size());
    double var = 0.0;
    for (double v : nz) {
        const double d = std::log(v) - mean;
        var += d * d;
    }
    st.var_log_nonzero = var / static_cast<double>(nz.size());

    std::vector<double> logs;
    logs.reserve(nz.size());
    for (double v : nz) {
        logs.push_back(std::log10(v));
    }
    st.histogram = make_histogram(logs, num_bins);
    return st;
}

MeasurementCosts measurement_costs(std::int64_t num_params) {
    if (num_params < 1) {
        throw std::invalid_argument("measurement_costs requires M >= 1");
    }
    const std::int64_t m = num_params;
    return {2 * m * (m - 1) + m, m * (m - 1) / 2, m};
}

} // namespace qgeo
