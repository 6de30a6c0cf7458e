// Copyright 2026 The qgame Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file report.hpp
/// Command reports and their three renderings. JSON is the source of truth;
/// CSV lists the checks and tables, text is a short human summary.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qgame/core.hpp"
#include "qgame/market/io.hpp"
#include "qgame/mbqc/universality.hpp"

namespace qgame::cli {

using nlohmann::json;

inline constexpr const char *kToolVersion = "1.0.0";

/// Bad flags, bad files, bad parameters: exit code 2.
class UsageError : public Error {
  public:
    using Error::Error;
};

enum class OutputFormat { json, csv, text };

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) {
            throw Error("table " + name + ": row width does not match the header");
        }
        rows.push_back(std::move(row));
    }
};

struct Report {
    std::string command;
    json config = json::object();
    std::vector<CheckRecord> checks;
    std::vector<Table> tables;
    std::optional<double> wall_time; ///< seconds; only with --timing

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.passed; });
    }
    int exit_code() const { return all_passed() ? 0 : 1; }
};

namespace detail {

inline json cell_json(const Cell &c) {
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                // JSON has no inf/nan
                return std::isfinite(v) ? json(v) : json(nullptr);
            } else {
                return json(v);
            }
        },
        c);
}

inline std::string cell_text(const Cell &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return market::format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        c);
}

/// Quotes a CSV field when it needs it.
inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

inline std::string finite_or_text(double x) { return std::isfinite(x) ? market::format_double(x) : "nan"; }

} // namespace detail

inline json to_json(const Report &r) {
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"status", c.passed ? "pass" : "fail"},
                          {"max_deviation", std::isfinite(c.max_deviation) ? json(c.max_deviation) : json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    }
    json tables = json::array();
    for (const auto &t : r.tables) {
        json rows = json::array();
        for (const auto &row : t.rows) {
            json jr = json::array();
            for (const auto &c : row) {
                jr.push_back(detail::cell_json(c));
            }
            rows.push_back(std::move(jr));
        }
        tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
    }
    json out = {{"tool", "qgame"},   {"tool_version", kToolVersion}, {"command", r.command},
                {"config", r.config}, {"passed", r.all_passed()},     {"checks", checks},
                {"tables", tables}};
    if (r.wall_time) {
        out["wall_time"] = *r.wall_time;
    }
    return out;
}

/// Checks first, then each table, separated by blank lines. Each block
/// starts with a "# name" line and a header row.
inline std::string to_csv(const Report &r) {
    std::string out = "# checks\nname,status,max_deviation,tolerance,detail\n";
    for (const auto &c : r.checks) {
        out += detail::csv_field(c.name) + "," + (c.passed ? "pass" : "fail") + "," +
               detail::finite_or_text(c.max_deviation) + "," + market::format_double(c.tolerance) + "," +
               detail::csv_field(c.detail) + "\n";
    }
    for (const auto &t : r.tables) {
        out += "\n# " + t.name + "\n";
        for (std::size_t k = 0; k < t.columns.size(); ++k) {
            out += (k ? "," : "") + detail::csv_field(t.columns[k]);
        }
        out += "\n";
        for (const auto &row : t.rows) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                out += (k ? "," : "") + detail::csv_field(detail::cell_text(row[k]));
            }
            out += "\n";
        }
    }
    return out;
}

inline std::string to_text(const Report &r) {
    std::string out = "qgame " + std::string(kToolVersion) + " " + r.command + ": " +
                      (r.all_passed() ? "all checks passed" : "CHECK FAILURES") + "\n";
    for (const auto &c : r.checks) {
        out += std::string(c.passed ? "  PASS " : "  FAIL ") + c.name +
               "  deviation=" + detail::finite_or_text(c.max_deviation) +
               " tolerance=" + market::format_double(c.tolerance);
        if (!c.detail.empty()) {
            out += "  (" + c.detail + ")";
        }
        out += "\n";
    }
    for (const auto &t : r.tables) {
        out += "\n" + t.name + " (" + std::to_string(t.rows.size()) + " rows)\n";
        std::vector<std::size_t> width(t.columns.size());
        std::vector<std::vector<std::string>> cells;
        for (std::size_t k = 0; k < t.columns.size(); ++k) {
            width[k] = t.columns[k].size();
        }
        for (const auto &row : t.rows) {
            std::vector<std::string> line;
            for (std::size_t k = 0; k < row.size(); ++k) {
                line.push_back(detail::cell_text(row[k]));
                width[k] = std::max(width[k], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        auto emit = [&](const std::vector<std::string> &line) {
            out += " ";
            for (std::size_t k = 0; k < line.size(); ++k) {
                out += " " + line[k] + std::string(width[k] - line[k].size(), ' ');
            }
            out += "\n";
        };
        emit(t.columns);
        for (const auto &line : cells) {
            emit(line);
        }
    }
    if (r.wall_time) {
        out += "\nwall time " + market::format_double(*r.wall_time) + " s\n";
    }
    return out;
}

inline std::string render(const Report &r, OutputFormat f) {
    switch (f) {
    case OutputFormat::json:
        return to_json(r).dump(2) + "\n";
    case OutputFormat::csv:
        return to_csv(r);
    case OutputFormat::text:
        return to_text(r);
    }
    return {};
}

} // namespace qgame::cli
