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

/// @file commands.hpp
/// The batch commands behind the qgame tool. Each takes a plain parameter
/// struct and returns a Report; nothing here touches argv or stdout.
///
/// Seeds: a command that needs several independent streams takes stream k
/// from make_stream(seed, k), and long Monte-Carlo loops switch stream every
/// kChunk trials, so results depend on (seed, trials) only.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qgame/cli/report.hpp"
#include "qgame/core.hpp"
#include "qgame/games/gvw.hpp"
#include "qgame/games/newcomb.hpp"
#include "qgame/games/qfa.hpp"
#include "qgame/market/io.hpp"
#include "qgame/market/strategy.hpp"
#include "qgame/market/wigner.hpp"
#include "qgame/mbqc/random_walk.hpp"
#include "qgame/mbqc/universality.hpp"
#include "qgame/random.hpp"

namespace qgame::cli {

inline constexpr std::uint64_t kDefaultSeed = 20070319;
inline constexpr std::uint64_t kChunk = 1U << 14;

// ---------------------------------------------------------------------------
// JSON input files

/// Reads and parses a JSON file; syntax errors name the line.
inline json load_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw UsageError(path + ":" + std::to_string(line) + ": JSON syntax error (" + e.what() + ")");
    }
}

namespace detail {

/// A number or a [re, im] pair.
inline Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw UsageError("expected a number or a [re, im] pair, got " + j.dump());
}

inline Matrix matrix_from_json(const json &j, const std::string &what) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw UsageError(what + ": expected a nonempty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw UsageError(what + ": ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

template <class F>
auto rethrow_as_usage(const std::string &what, F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw UsageError(what + ": " + e.what());
    }
}

inline std::vector<std::string> split_word(const std::string &word) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : word) {
        if (ch == ' ' || ch == ',' || ch == '\t') {
            if (!cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

/// |x − model| in units of the binomial standard error.
inline double z_score(double freq, double model, std::uint64_t trials) {
    const double sigma = std::sqrt(model * (1.0 - model) / static_cast<double>(trials));
    if (sigma == 0.0) {
        return freq == model ? 0.0 : INFINITY;
    }
    return std::abs(freq - model) / sigma;
}

} // namespace detail

// ---------------------------------------------------------------------------
// verify

struct VerifyParams {
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> only;
};

inline Report cmd_verify(const VerifyParams &p) {
    const auto names = mbqc::universality_check_names();
    for (const auto &n : p.only) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
            throw UsageError("verify: unknown check '" + n + "'");
        }
    }
    Report r;
    r.command = "verify";
    r.config = {{"seed", p.seed}, {"only", p.only}};
    mbqc::UniversalityOptions opt;
    opt.seed = p.seed;
    opt.only = p.only;
    r.checks = mbqc::verify_universality(opt).checks;
    return r;
}

// ---------------------------------------------------------------------------
// newcomb

struct NewcombParams {
    int control = 1;
    std::string breaker = "absent";
    std::uint64_t shots = 0;
    std::optional<double> p_not;
    std::uint64_t seed = kDefaultSeed;
};

inline Report cmd_newcomb(const NewcombParams &p) {
    const auto breaker = games::parse_breaker(p.breaker);
    if (!breaker) {
        throw UsageError("newcomb: unknown breaker '" + p.breaker + "' (absent, I, NOT, qutrojan)");
    }
    if (p.control != 0 && p.control != 1) {
        throw UsageError("newcomb: control must be 0 or 1");
    }
    Report r;
    r.command = "newcomb";
    r.config = {{"control", p.control}, {"breaker", games::to_string(*breaker)}, {"shots", p.shots},
                {"seed", p.seed}};
    if (p.p_not) {
        r.config["p_not"] = *p.p_not;
    }
    const games::NewcombConfig cfg{p.control, *breaker};

    // The prediction each configuration must make with certainty.
    int expected = p.control;
    if (*breaker == games::Breaker::not_gate) {
        expected = 1 - p.control;
    } else if (*breaker == games::Breaker::qutrojan) {
        expected = 0;
    }

    std::array<double, 2> law = games::newcomb_run(cfg).p;
    if (p.p_not) {
        if (*breaker == games::Breaker::qutrojan) {
            throw UsageError("newcomb: --p-not cannot be combined with the qutrojan");
        }
        const auto li = games::newcomb_run({p.control, games::Breaker::identity}).p;
        const auto ln = games::newcomb_run({p.control, games::Breaker::not_gate}).p;
        for (std::size_t b = 0; b < 2; ++b) {
            law[b] = (1.0 - *p.p_not) * li[b] + *p.p_not * ln[b];
        }
    } else {
        r.checks.push_back(make_check("prediction", std::abs(1.0 - law[static_cast<std::size_t>(expected)]),
                                      tol::algebraic, "bit " + std::to_string(expected) + " with certainty"));
    }

    games::NewcombSample sample;
    if (p.shots > 0) {
        Rng rng = make_stream(p.seed, 0);
        try {
            sample = games::newcomb_sample(cfg, p.shots, rng, p.p_not);
        } catch (const ValidationError &e) {
            throw UsageError(e.what());
        }
        const double freq = static_cast<double>(sample.counts[0]) / static_cast<double>(p.shots);
        r.checks.push_back(make_check("sampled_readout", detail::z_score(freq, law[0], p.shots), 4.0,
                                      "z-score of the bit-0 frequency"));
    }

    Table t{"readout", {"bit", "probability", "count"}, {}};
    for (std::size_t b = 0; b < 2; ++b) {
        t.add({static_cast<std::int64_t>(b), law[b], static_cast<std::int64_t>(sample.counts[b])});
    }
    r.tables.push_back(std::move(t));
    return r;
}

// ---------------------------------------------------------------------------
// gamble

struct GambleCmdParams {
    double theta = std::numbers::pi / 4;
    double p_verify = 0.0;
    double reward = 1.0;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = kDefaultSeed;
    bool sweep = false;
};

inline constexpr std::size_t kSweepRows = 101;

inline Report cmd_gamble(const GambleCmdParams &p) {
    const games::GambleParams g{p.theta, p.p_verify, p.reward};
    try {
        games::validate(g);
    } catch (const ValidationError &e) {
        throw UsageError(e.what());
    }
    if (p.trials == 0) {
        throw UsageError("gamble: --trials must be at least 1");
    }
    Report r;
    r.command = "gamble";
    r.config = {{"theta", p.theta}, {"p_verify", p.p_verify}, {"reward", p.reward},
                {"trials", p.trials}, {"seed", p.seed},      {"sweep", p.sweep}};

    const games::Payoffs exact = games::gvw_expected_payoffs(g);
    const games::GambleSample s = games::gvw_simulate(g, p.trials, make_stream(p.seed, 0)());
    r.checks.push_back(make_check("zero_sum", std::abs(exact.bob + exact.alice), 0.0));
    r.checks.push_back(make_check("monte_carlo", std::abs(s.mean_bob - exact.bob), std::max(s.half_width, tol::algebraic),
                                  "tolerance is the 4-sigma half-width"));

    Table pay{"payoff",
              {"theta", "p_verify", "reward", "e_bob_exact", "e_alice_exact", "e_bob_empirical", "half_width",
               "count_found", "count_lost", "count_reward"},
              {}};
    pay.add({p.theta, p.p_verify, p.reward, exact.bob, exact.alice, s.mean_bob, s.half_width,
             static_cast<std::int64_t>(s.counts[0]), static_cast<std::int64_t>(s.counts[1]),
             static_cast<std::int64_t>(s.counts[2])});
    r.tables.push_back(std::move(pay));

    const auto br = games::gvw_best_response(p.p_verify, p.reward);
    Table best{"best_response", {"order", "reward", "p_verify", "theta", "e_bob"}, {}};
    best.add({std::string("alice_answers_p_verify"), p.reward, p.p_verify, br.theta, br.e_bob});
    for (auto order : {games::MoveOrder::bob_first, games::MoveOrder::alice_first}) {
        const auto v = games::gvw_value(p.reward, order);
        best.add({std::string(games::to_string(order)), p.reward, v.p_verify, v.theta, v.e_bob});
    }
    r.tables.push_back(std::move(best));

    const auto fair = games::gvw_fair_limit();
    Table fl{"fair_limit", {"reward", "e_bob_bob_first", "e_bob_alice_first", "found"}, {}};
    fl.add({fair.reward, fair.bob_first.e_bob, fair.alice_first.e_bob, fair.found});
    r.tables.push_back(std::move(fl));
    r.checks.push_back(make_check("fair_limit",
                                  std::max(std::abs(fair.bob_first.e_bob), std::abs(fair.alice_first.e_bob)), 1e-3,
                                  "reward " + market::format_double(fair.reward)));

    if (p.sweep) {
        Table sw{"sweep", {"theta", "e_bob_exact", "e_bob_empirical", "half_width"}, {}};
        std::size_t outside = 0;
        for (std::size_t i = 0; i < kSweepRows; ++i) {
            const double th = (std::numbers::pi / 2) * static_cast<double>(i) / static_cast<double>(kSweepRows - 1);
            const games::GambleParams gi{th, p.p_verify, p.reward};
            const double e = games::gvw_expected_payoffs(gi).bob;
            const auto si = games::gvw_simulate(gi, p.trials, make_stream(p.seed, i + 1)());
            if (std::abs(si.mean_bob - e) > std::max(si.half_width, tol::algebraic)) {
                ++outside;
            }
            sw.add({th, e, si.mean_bob, si.half_width});
        }
        r.tables.push_back(std::move(sw));
        // 4 sigma: expect about 0.006 of 101 rows outside; more than 2 is suspect
        r.checks.push_back(make_check("sweep_monte_carlo", static_cast<double>(outside), 2.0,
                                      "rows outside the half-width"));
    }
    return r;
}

// ---------------------------------------------------------------------------
// walk

struct WalkParams {
    std::size_t n_max = 20;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = kDefaultSeed;
};

inline Report cmd_walk(const WalkParams &p) {
    if (p.n_max == 0) {
        throw UsageError("walk: --n-max must be at least 1");
    }
    if (p.trials == 0) {
        throw UsageError("walk: --trials must be at least 1");
    }
    Report r;
    r.command = "walk";
    r.config = {{"n_max", p.n_max}, {"trials", p.trials}, {"seed", p.seed}};

    // survivors[n] = walks still running after n steps
    std::vector<std::uint64_t> survivors(p.n_max + 1, 0);
    double total_steps = 0.0;
    for (std::uint64_t start = 0, k = 0; start < p.trials; start += kChunk, ++k) {
        Rng rng = make_stream(p.seed, k);
        const std::uint64_t end = std::min(p.trials, start + kChunk);
        for (std::uint64_t i = start; i < end; ++i) {
            const auto target = mbqc::PauliTag::single(mbqc::kAllPaulis[1 + (rng() % 3)]);
            const auto w = mbqc::implement_pauli_randomwalk(target, rng);
            total_steps += static_cast<double>(w.steps);
            for (std::size_t n = 0; n <= std::min(p.n_max, w.steps - 1); ++n) {
                ++survivors[n];
            }
        }
    }
    const double n_trials = static_cast<double>(p.trials);
    Table t{"survival", {"n", "empirical", "model", "sigma", "band_4sigma", "abs_diff", "within"}, {}};
    double worst_z = 0.0;
    double worst_diff = 0.0;
    for (std::size_t n = 1; n <= p.n_max; ++n) {
        const double emp = static_cast<double>(survivors[n]) / n_trials;
        const double model = mbqc::survival_model(n);
        const double sigma = std::sqrt(model * (1.0 - model) / n_trials);
        const double z = detail::z_score(emp, model, p.trials);
        worst_z = std::max(worst_z, z);
        worst_diff = std::max(worst_diff, std::abs(emp - model));
        t.add({static_cast<std::int64_t>(n), emp, model, sigma, 4.0 * sigma, std::abs(emp - model), z <= 4.0});
    }
    r.tables.push_back(std::move(t));

    const double first = 1.0 - static_cast<double>(survivors[1]) / n_trials;
    const double mean = total_steps / n_trials;
    Table s{"summary", {"quantity", "empirical", "model"}, {}};
    s.add({std::string("first_step_success"), first, 0.25});
    s.add({std::string("mean_steps"), mean, 4.0});
    s.add({std::string("max_abs_diff"), worst_diff, 0.0});
    r.tables.push_back(std::move(s));

    r.checks.push_back(make_check("first_step", detail::z_score(first, 0.25, p.trials), 4.0, "z-score"));
    r.checks.push_back(make_check("survival_curve", worst_z, 4.0, "largest z-score over n"));
    // steps are geometric(1/4): variance 12
    r.checks.push_back(make_check("mean_steps", std::abs(mean - 4.0) / std::sqrt(12.0 / n_trials), 4.0, "z-score"));
    return r;
}

// ---------------------------------------------------------------------------
// market

struct MarketParams {
    std::string spec_path;
    std::optional<std::size_t> grid_points;
};

struct MarketRun {
    Report report;
    market::WignerGrid wigner;
};

inline const std::vector<double> kDefaultPrices{0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};

namespace detail {

/// |ψ̃(p)|² by direct summation.
inline double direct_momentum_density(const market::WaveFunction1D &w, double p) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        acc += std::polar(1.0, -p * w.node(j) / w.hbar) * w.samples[static_cast<Eigen::Index>(j)];
    }
    return std::norm(acc * w.step() / std::sqrt(2.0 * std::numbers::pi * w.hbar));
}

} // namespace detail

inline MarketRun cmd_market(const MarketParams &p) {
    const json spec = load_json_file(p.spec_path);
    Report r;
    r.command = "market";

    market::GridSpec grid;
    double hbar = 1.0;
    std::vector<double> prices = kDefaultPrices;
    bool centered_gaussian = false;
    market::WaveFunction1D psi;
    try {
        detail::rethrow_as_usage(p.spec_path, [&] {
            if (spec.contains("grid")) {
                const auto &g = spec.at("grid");
                grid = market::GridSpec{g.at("q_min").get<double>(), g.at("q_max").get<double>(),
                                        g.at("n_points").get<std::size_t>()};
            }
            if (p.grid_points) {
                grid.n_points = *p.grid_points;
            }
            grid.validate();
            hbar = spec.value("hbar", 1.0);
            if (spec.contains("prices")) {
                prices = spec.at("prices").get<std::vector<double>>();
            }
            const auto &st = spec.at("strategy");
            const auto type = st.at("type").get<std::string>();
            if (type == "gaussian") {
                market::GaussianOptions opt;
                opt.center = st.value("center", true);
                opt.offset = st.value("offset", 0.0);
                opt.hbar = hbar;
                centered_gaussian = opt.center && opt.offset == 0.0;
                psi = market::make_gaussian_strategy(st.at("mean").get<double>(), st.at("spread").get<double>(), grid,
                                                     opt);
            } else if (type == "samples") {
                json wj = st;
                wj["grid"] = market::grid_to_json(grid);
                wj["rep"] = "q";
                wj["hbar"] = hbar;
                psi = market::normalized(market::wavefunction_from_json(wj));
            } else {
                throw UsageError(p.spec_path + ": strategy type must be \"gaussian\" or \"samples\"");
            }
            return 0;
        });
    } catch (const ValidationError &e) {
        throw UsageError(p.spec_path + ": " + e.what());
    }
    for (double c : prices) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw UsageError(p.spec_path + ": prices must be positive");
        }
    }
    r.config = {{"spec", p.spec_path},
                {"grid", market::grid_to_json(grid)},
                {"hbar", hbar},
                {"prices", prices},
                {"strategy", spec.at("strategy").value("type", "")}};

    const market::WaveFunction1D psi_p = market::to_momentum(psi);
    Table cdf{"cdf", {"c", "log_c", "demand", "supply"}, {}};
    for (double c : prices) {
        cdf.add({c, std::log(c), market::demand_cdf(psi, c), market::supply_cdf(psi_p, c)});
    }
    r.tables.push_back(std::move(cdf));
    if (centered_gaussian) {
        const double d = market::demand_cdf(psi, 1.0);
        const double s = market::supply_cdf(psi_p, 1.0);
        r.checks.push_back(make_check("cdf_unit_price", std::max(std::abs(d - 0.5), std::abs(s - 0.5)), 1e-8));
    }
    r.checks.push_back(make_check("fourier_round_trip", max_abs_diff(market::to_position(psi_p).samples, psi.samples),
                                  tol::circuit));

    const market::WignerGrid w = market::wigner(psi, 2.0 * std::numbers::pi * hbar);
    r.checks.push_back(make_check("wigner_normalization", std::abs(w.normalization() - 1.0), 1e-8));
    r.checks.push_back(make_check("wigner_real", w.max_imag, tol::circuit));
    const Eigen::VectorXd qm = w.q_marginal();
    const Eigen::VectorXd pm = w.p_marginal();
    double dq = 0.0;
    double dp = 0.0;
    for (std::size_t j = 0; j < w.n(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        dq = std::max(dq, std::abs(qm[jj] - std::norm(psi.samples[jj])));
        dp = std::max(dp, std::abs(pm[jj] - detail::direct_momentum_density(psi, w.p(j))));
    }
    r.checks.push_back(make_check("q_marginal", dq, tol::quadrature));
    r.checks.push_back(make_check("p_marginal", dp, tol::quadrature));
    r.checks.push_back(make_check("aliasing", w.boundary_mass, market::kAliasingThreshold,
                                  "boundary mass of the sampled state"));

    Table ws{"wigner_summary",
             {"n_points", "dq", "dp", "normalization", "max_imag", "boundary_mass", "aliasing", "min_value"},
             {}};
    ws.add({static_cast<std::int64_t>(w.n()), w.dq(), w.dp(), w.normalization(), w.max_imag, w.boundary_mass,
            w.aliasing, w.values.minCoeff()});
    r.tables.push_back(std::move(ws));
    return {std::move(r), w};
}

// ---------------------------------------------------------------------------
// qfa

struct QfaParams {
    std::string spec_path;
    std::string word;
};

inline games::QFA qfa_from_json(const json &j, const std::string &what) {
    return detail::rethrow_as_usage(what, [&] {
        const auto &init = j.at("initial");
        if (!init.is_array() || init.empty()) {
            throw UsageError(what + ": initial must be a nonempty array");
        }
        Vector s0(static_cast<Eigen::Index>(init.size()));
        for (std::size_t k = 0; k < init.size(); ++k) {
            s0[static_cast<Eigen::Index>(k)] = detail::complex_from_json(init[k]);
        }
        std::map<std::string, Operator> alphabet;
        for (const auto &[sym, m] : j.at("alphabet").items()) {
            alphabet.emplace(sym, Operator(detail::matrix_from_json(m, what + ": symbol " + sym)));
        }
        try {
            return games::QFA(std::move(s0), std::move(alphabet), detail::matrix_from_json(j.at("accept"), what));
        } catch (const ValidationError &e) {
            throw UsageError(what + ": " + e.what());
        }
    });
}

inline Report cmd_qfa(const QfaParams &p) {
    const games::QFA a = qfa_from_json(load_json_file(p.spec_path), p.spec_path);
    const auto word = detail::split_word(p.word);
    for (const auto &sym : word) {
        if (!a.alphabet().count(sym)) {
            throw UsageError("qfa: symbol '" + sym + "' is not in the alphabet");
        }
    }
    Report r;
    r.command = "qfa";
    r.config = {{"spec", p.spec_path}, {"word", word}, {"dim", a.dim()}};

    Table t{"trace", {"step", "symbol", "accept_probability"}, {}};
    std::vector<std::string> prefix;
    double norm_dev = 0.0;
    double range_dev = 0.0;
    auto record = [&](std::size_t step, const std::string &sym) {
        const double pr = games::qfa_run(a, prefix);
        norm_dev = std::max(norm_dev, std::abs(games::qfa_evolve(a, prefix).norm() - 1.0));
        range_dev = std::max({range_dev, -pr, pr - 1.0});
        t.add({static_cast<std::int64_t>(step), sym, pr});
    };
    record(0, "");
    for (std::size_t k = 0; k < word.size(); ++k) {
        prefix.push_back(word[k]);
        record(k + 1, word[k]);
    }
    r.tables.push_back(std::move(t));
    r.checks.push_back(make_check("norm_preserved", norm_dev, tol::algebraic));
    r.checks.push_back(make_check("probability_range", range_dev, tol::algebraic));
    return r;
}

} // namespace qgame::cli
