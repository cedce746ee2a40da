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

#include "gyronet/cli/table.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gyronet/errors.h"

namespace gyronet::cli {

namespace {

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

struct CellToCsv {
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string &v) const { return csv_escape(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct CellToJson {
    nlohmann::json operator()(double v) const {
        if (!std::isfinite(v)) {
            return nullptr;
        }
        return std::strtod(format_number(v).c_str(), nullptr);
    }
    nlohmann::json operator()(int64_t v) const { return v; }
    nlohmann::json operator()(const std::string &v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error(ErrorCode::InvalidArgument, "row width does not match the header");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream &out, const Table &table) {
    for (size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << std::visit(CellToCsv{}, row[i]);
        }
        out << '\n';
    }
}

nlohmann::json table_to_json(const Table &table, const nlohmann::json &metadata) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = std::visit(CellToJson{}, row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return {{"metadata", metadata}, {"columns", table.columns}, {"rows", std::move(rows)}};
}

}  // namespace gyronet::cli
