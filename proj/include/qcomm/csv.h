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

#ifndef QCOMM_CSV_H
#define QCOMM_CSV_H

#include <ostream>
#include <string>
#include <vector>

namespace qcomm {

/// "%.12g", so reruns print identical bytes.
std::string format_number(double v);

/// Header plus rows; cells containing commas or quotes are quoted.
class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable &add_row(std::vector<std::string> cells);
    const std::vector<std::string> &header() const { return header_; }
    const std::vector<std::vector<std::string>> &rows() const { return rows_; }
    void write(std::ostream &out) const;
    std::string str() const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace qcomm

#endif
