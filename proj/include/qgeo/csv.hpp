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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace qgeo {

/// Shortest decimal string that parses back to exactly @p v.
[[nodiscard]] std::string format_double(double v);

/// A CSV cell. Numbers are rendered on construction.
class CsvCell {
  public:
    CsvCell(double v) : text_(format_double(v)) {}
    CsvCell(int v) : text_(std::to_string(v)) {}
    CsvCell(std::int64_t v) : text_(std::to_string(v)) {}
    CsvCell(std::uint64_t v) : text_(std::to_string(v)) {}
    CsvCell(std::string v) : text_(std::move(v)) {}
    CsvCell(std::string_view v) : text_(v) {}
    CsvCell(const char *v) : text_(v) {}
    CsvCell(bool v) : text_(v ? "1" : "0") {}

    [[nodiscard]] const std::string &text() const noexcept { return text_; }

  private:
    std::string text_;
};

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header)
        : header_(std::move(header)) {}

    void add_row(std::vector<CsvCell> cells);

    [[nodiscard]] const std::vector<std::string> &header() const noexcept {
        return header_;
    }
    [[nodiscard]] std::size_t num_rows() const noexcept {
        return rows_.size();
    }
    [[nodiscard]] const std::vector<std::string> &row(std::size_t i) const {
        return rows_.at(i);
    }
    /// Column position by name; throws if absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] const std::string &at(std::size_t row,
                                        std::string_view col) const;

    /// Header line plus one line per row, "\n"-terminated.
    [[nodiscard]] std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace qgeo
