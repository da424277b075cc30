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

#include <span>
#include <vector>

namespace qgeo {

/// Least-squares polynomial y ~ sum_k c_k x^k.
struct PolynomialFit {
    std::vector<double> coefficients; ///< c_0 first
    double rss = 0.0;                 ///< residual sum of squares
    double r_squared = 0.0;
    int num_points = 0;

    [[nodiscard]] double operator()(double x) const;
    /// Gaussian-likelihood AIC, n ln(rss/n) + 2k with k = degree + 1.
    [[nodiscard]] double aic() const;
};

[[nodiscard]] PolynomialFit fit_polynomial(std::span<const double> x,
                                           std::span<const double> y,
                                           int degree);

} // namespace qgeo
