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
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "qgeo/circuit.hpp"
#include "qgeo/csv.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/serialization.hpp"

namespace {

using qgeo::CircuitTemplate;
using qgeo::GateKind;
using qgeo::InitialLayer;
using qgeo::RotationScheme;
using qgeo::Topology;

TEST(Csv, FormatDoubleIsShortestRoundTrip) {
    EXPECT_EQ(qgeo::format_double(0.1), "0.1");
    EXPECT_EQ(qgeo::format_double(1e-10), "1e-10");
    EXPECT_EQ(qgeo::format_double(30.0), "30");
    qgeo::Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(rng.uniform(-1, 1), rng.below(200) - 100);
        EXPECT_EQ(std::strtod(qgeo::format_double(v).c_str(), nullptr), v);
    }
}

TEST(Csv, TableRendering) {
    qgeo::CsvTable t({"name", "n", "x", "ok"});
    t.add_row({"a", 3, 0.5, true});
    t.add_row({std::string("b"), std::int64_t{7}, 2.0, false});
    EXPECT_EQ(t.str(), "name,n,x,ok\na,3,0.5,1\nb,7,2,0\n");
    EXPECT_EQ(t.num_rows(), 2u);
    EXPECT_EQ(t.at(1, "n"), "7");
    EXPECT_EQ(t.column("x"), 2u);
    EXPECT_THROW(t.add_row({"short"}), std::invalid_argument);
    EXPECT_THROW((void)t.column("missing"), std::out_of_range);
}

TEST(Serialization, TemplateRoundTrip) {
    const auto t = CircuitTemplate::build(4, 5, RotationScheme::RandXYW,
                                          GateKind::SqrtISwap, Topology::Alt,
                                          1234567890123ull);
    const std::vector<int> drop = {0, 7, 19};
    const auto masked = t.without_slots(drop);
    const auto j = qgeo::to_json(masked);
    EXPECT_FALSE(j.contains("initial_layer"));
    EXPECT_FALSE(j.contains("axes"));
    EXPECT_EQ(qgeo::template_from_json(j), masked);
    EXPECT_EQ(qgeo::template_from_json(nlohmann::json::parse(j.dump())),
              masked);
}

TEST(Serialization, OptionalKeysAppearWhenNeeded) {
    const auto custom = CircuitTemplate::custom(
        1, 1, {GateKind::RotY, GateKind::RotZ}, GateKind::CNOT,
        Topology::Chain, InitialLayer::None);
    const auto j = qgeo::to_json(custom);
    EXPECT_EQ(j.at("initial_layer"), "none");
    EXPECT_EQ(j.at("axes").size(), 2u);
    EXPECT_EQ(qgeo::template_from_json(j), custom);
}

TEST(Serialization, RejectsMalformedTemplates) {
    auto j = qgeo::to_json(CircuitTemplate::build(
        2, 1, RotationScheme::FixedX, GateKind::CNOT, Topology::Chain, 0));
    auto extra = j;
    extra["colour"] = "red";
    EXPECT_THROW((void)qgeo::template_from_json(extra), std::invalid_argument);
    auto bad_mask = j;
    bad_mask["active_mask"] = {1, 2};
    EXPECT_THROW((void)qgeo::template_from_json(bad_mask),
                 std::invalid_argument);
    auto short_mask = j;
    short_mask["active_mask"] = {1};
    EXPECT_THROW((void)qgeo::template_from_json(short_mask),
                 std::invalid_argument);
    EXPECT_THROW((void)qgeo::template_from_json(nlohmann::json::array()),
                 std::invalid_argument);
}

TEST(Serialization, ReportFieldNames) {
    const qgeo::CapacityReport r{3, 5, 0.5, 1e-10};
    const auto j = qgeo::to_json(r);
    EXPECT_EQ(j.at("effective_dimension"), 3);
    EXPECT_EQ(j.at("parameter_dimension"), 5);
    EXPECT_EQ(j.at("redundancy"), 0.5);
    EXPECT_EQ(j.at("rank_tolerance"), 1e-10);
    qgeo::SpectrumStats s;
    s.histogram.counts = {1, 2};
    s.histogram.bin_edges = {0.0, 1.0, 2.0};
    const auto js = qgeo::to_json(s);
    EXPECT_TRUE(js.contains("var_log_nonzero"));
    EXPECT_TRUE(js.contains("min_nonzero"));
    EXPECT_EQ(js.at("histogram").at("counts").size(), 2u);
}

} // namespace
