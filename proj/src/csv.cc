// Copyright 2026 The qcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcomm/csv.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qcomm {

namespace {

std::string escape(const std::string &cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void write_line(std::ostream &out, const std::vector<std::string> &cells) {
    for (size_t i = 0; i < cells.size(); i++) {
        if (i > 0) {
            out << ',';
        }
        out << escape(cells[i]);
    }
    out << '\n';
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("CSV header must not be empty");
    }
}

CsvTable &CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
    return *this;
}

void CsvTable::write(std::ostream &out) const {
    write_line(out, header_);
    for (const auto &r : rows_) {
        write_line(out, r);
    }
}

std::string CsvTable::str() const {
    std::ostringstream s;
    write(s);
    return s.str();
}

}  // namespace qcomm
