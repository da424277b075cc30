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
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qgeo/fit.hpp"

namespace {

TEST(Fit, RecoversExactPolynomial) {
    std::vector<double> x, y;
    for (int i = 0; i < 8; ++i) {
        x.push_back(i);
        y.push_back(2.0 - 3.0 * i + 0.5 * i * i);
    }
    const auto fit = qgeo::fit_polynomial(x, y, 2);
    ASSERT_EQ(fit.coefficients.size(), 3u);
    EXPECT_NEAR(fit.coefficients[0], 2.0, 1e-10);
    EXPECT_NEAR(fit.coefficients[1], -3.0, 1e-10);
    EXPECT_NEAR(fit.coefficients[2], 0.5, 1e-10);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_NEAR(fit(10.0), 22.0, 1e-9);
    EXPECT_EQ(fit.num_points, 8);
}

TEST(Fit, AicPrefersTrueDegree) {
    std::vector<double> x, y;
    for (int i = 3; i <= 8; ++i) {
        x.push_back(i);
        y.push_back(i * i + ((i % 2) ? 0.1 : -0.1));
    }
    const auto lin = qgeo::fit_polynomial(x, y, 1);
    const auto quad = qgeo::fit_polynomial(x, y, 2);
    EXPECT_LT(quad.aic(), lin.aic());
    EXPECT_LT(lin.r_squared, 1.0);
}

TEST(Fit, RejectsTooFewPoints) {
    const std::vector<double> x = {1.0, 2.0}, y = {1.0, 2.0};
    EXPECT_THROW((void)qgeo::fit_polynomial(x, y, 2), std::invalid_argument);
    const std::vector<double> z = {1.0};
    EXPECT_THROW((void)qgeo::fit_polynomial(x, z, 0), std::invalid_argument);
}

} // namespace
