// Copyright 2026 The Gyronet Authors
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

#ifndef GYRONET_CLI_TABLE_H
#define GYRONET_CLI_TABLE_H

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gyronet::cli {

using Cell = std::variant<double, int64_t, std::string, bool>;

/// Rows with a fixed column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws InvalidArgument if the row width differs from the header.
    void add_row(std::vector<Cell> row);
};

/// "%.12g"; non-finite values print as nan/inf.
std::string format_number(double v);

/// Header line then one line per row. Strings containing commas or quotes
/// are quoted.
void write_csv(std::ostream &out, const Table &table);

/// {"metadata": ..., "rows": [{column: value, ...}, ...]}. Doubles are
/// rounded to 12 significant digits; non-finite values become null.
nlohmann::json table_to_json(const Table &table, const nlohmann::json &metadata);

}  // namespace gyronet::cli

#endif
