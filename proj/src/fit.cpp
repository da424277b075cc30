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
#include "qgeo/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace qgeo {

double PolynomialFit::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double PolynomialFit::aic() const {
    const double n = num_points;
    const double k = static_cast<double>(coefficients.size());
    // A perfect fit has no finite likelihood; clamp so comparisons still work.
    const double rss_floor = std::max(rss, std::numeric_limits<double>::min());
    return n * std::log(rss_floor / n) + 2.0 * k;
}

PolynomialFit fit_polynomial(std::span<const double> x,
                             std::span<const double> y, int degree) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_polynomial: x and y differ in length");
    }
    if (degree < 0 || x.size() < static_cast<std::size_t>(degree) + 1) {
        throw std::invalid_argument("fit_polynomial: need at least degree + 1 "
                                    "points");
    }
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            a(i, k) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);

    PolynomialFit fit;
    fit.coefficients.assign(c.data(), c.data() + c.size());
    fit.num_points = static_cast<int>(n);
    fit.rss = (a * c - b).squaredNorm();
    const double tss = (b.array() - b.mean()).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
    return fit;
}

} // namespace qgeo
