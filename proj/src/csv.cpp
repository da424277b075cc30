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
#include "qgeo/csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace qgeo {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void CsvTable::add_row(std::vector<CsvCell> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CSV row has " +
                                    std::to_string(cells.size()) +
                                    " cells, header has " +
                                    std::to_string(header_.size()));
    }
    std::vector<std::string> row;
    row.reserve(cells.size());
    for (auto &c : cells) {
        row.push_back(c.text());
    }
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("no CSV column '" + std::string(name) + "'");
}

const std::string &CsvTable::at(std::size_t row, std::string_view col) const {
    return rows_.at(row).at(column(col));
}

std::string CsvTable::str() const {
    std::string out;
    auto emit = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto &r : rows_) {
        emit(r);
    }
    return out;
}

} // namespace qgeo
