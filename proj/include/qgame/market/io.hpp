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

/// @file io.hpp
/// CSV and JSON for strategies and Wigner grids. Numbers are written in the
/// shortest form that reads back to the same double, so JSON round-trips are
/// bit-exact.

#pragma once

#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "qgame/core.hpp"
#include "qgame/market/strategy.hpp"
#include "qgame/market/wigner.hpp"

namespace qgame::market {

using nlohmann::json;

/// Shortest round-trip decimal form of `x`.
inline std::string format_double(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline double parse_double(const std::string &s) {
    double x = 0.0;
    const char *end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, x);
    if (r.ec != std::errc{} || r.ptr != end) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return x;
}

// ---------------------------------------------------------------------------
// JSON

inline json grid_to_json(const GridSpec &g) { return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"n_points", g.n_points}}; }

inline GridSpec grid_from_json(const json &j) {
    GridSpec g{j.at("q_min").get<double>(), j.at("q_max").get<double>(), j.at("n_points").get<std::size_t>()};
    g.validate();
    return g;
}

inline json to_json(const WaveFunction1D &w) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index j = 0; j < w.samples.size(); ++j) {
        re.push_back(w.samples[j].real());
        im.push_back(w.samples[j].imag());
    }
    return {{"grid", grid_to_json(w.grid)}, {"rep", to_string(w.rep)}, {"hbar", w.hbar}, {"re", re}, {"im", im}};
}

inline WaveFunction1D wavefunction_from_json(const json &j) {
    WaveFunction1D w;
    w.grid = grid_from_json(j.at("grid"));
    const auto rep = j.at("rep").get<std::string>();
    if (rep != "q" && rep != "p") {
        throw ValidationError("strategy json: rep must be \"q\" or \"p\"");
    }
    w.rep = rep == "q" ? Rep::q : Rep::p;
    w.hbar = j.at("hbar").get<double>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (re.size() != w.grid.n_points || im.size() != w.grid.n_points) {
        throw ValidationError("strategy json: sample count does not match the grid");
    }
    w.samples.resize(static_cast<Eigen::Index>(w.grid.n_points));
    for (std::size_t k = 0; k < w.grid.n_points; ++k) {
        w.samples[static_cast<Eigen::Index>(k)] = Complex(re[k].get<double>(), im[k].get<double>());
    }
    w.validate();
    return w;
}

inline json to_json(const WignerGrid &w) {
    json rows = json::array();
    for (Eigen::Index l = 0; l < w.values.rows(); ++l) {
        json row = json::array();
        for (Eigen::Index j = 0; j < w.values.cols(); ++j) {
            row.push_back(w.values(l, j));
        }
        rows.push_back(std::move(row));
    }
    return {{"grid", grid_to_json(w.grid)}, {"h", w.h},
            {"max_imag", w.max_imag},      {"boundary_mass", w.boundary_mass},
            {"aliasing", w.aliasing},      {"values", rows}};
}

inline WignerGrid wigner_from_json(const json &j) {
    WignerGrid w;
    w.grid = grid_from_json(j.at("grid"));
    w.h = j.at("h").get<double>();
    w.max_imag = j.at("max_imag").get<double>();
    w.boundary_mass = j.at("boundary_mass").get<double>();
    w.aliasing = j.at("aliasing").get<bool>();
    const auto &rows = j.at("values");
    const auto n = static_cast<Eigen::Index>(w.grid.n_points);
    if (rows.size() != w.grid.n_points) {
        throw ValidationError("wigner json: row count does not match the grid");
    }
    w.values.resize(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        const auto &row = rows[static_cast<std::size_t>(l)];
        if (row.size() != w.grid.n_points) {
            throw ValidationError("wigner json: column count does not match the grid");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            w.values(l, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// CSV

/// Columns: node, re, im. Header names the representation.
inline std::string to_csv(const WaveFunction1D &w) {
    std::string out = std::string(to_string(w.rep)) + ",re,im\n";
    for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex z = w.samples[static_cast<Eigen::Index>(j)];
        out += format_double(w.node(j)) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "\n";
    }
    return out;
}

/// Header row: "p\q" then the q nodes; one row per p node.
inline std::string to_csv(const WignerGrid &w) {
    std::string out = "p\\q";
    for (std::size_t j = 0; j < w.n(); ++j) {
        out += "," + format_double(w.q(j));
    }
    out += "\n";
    for (std::size_t l = 0; l < w.n(); ++l) {
        out += format_double(w.p(l));
        for (std::size_t j = 0; j < w.n(); ++j) {
            out += "," + format_double(w.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)));
        }
        out += "\n";
    }
    return out;
}

/// Reads the value block of a Wigner CSV written by to_csv.
inline RealMatrix wigner_values_from_csv(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (header) {
            width = cells.size() - 1;
            header = false;
            continue;
        }
        if (cells.size() != width + 1) {
            throw ValidationError("wigner csv: ragged row " + std::to_string(rows.size() + 2));
        }
        std::vector<double> r;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            r.push_back(parse_double(cells[c]));
        }
        rows.push_back(std::move(r));
    }
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t l = 0; l < rows.size(); ++l) {
        for (std::size_t c = 0; c < width; ++c) {
            m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(c)) = rows[l][c];
        }
    }
    return m;
}

} // namespace qgame::market
