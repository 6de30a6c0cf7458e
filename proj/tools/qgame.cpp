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

// qgame: batch front end. Exit codes: 0 every check passed, 1 some check
// failed, 2 usage, parse or validation error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qgame/cli/commands.hpp"

using namespace qgame;
using namespace qgame::cli;

namespace {

constexpr int kUsageExit = 2;

struct Global {
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::uint64_t> trials;
    OutputFormat output = OutputFormat::json;
    std::string out_path;
    bool timing = false;
};

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw UsageError("write failed: " + path);
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum game simulator and verifier"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    Global g;
    const std::map<std::string, OutputFormat> formats{
        {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"text", OutputFormat::text}};
    app.add_option("--seed", g.seed, "64-bit seed; sub-streams are split from it")->capture_default_str();
    app.add_option("--trials", g.trials, "Monte-Carlo trials (command default if omitted)");
    app.add_option("--output", g.output, "Report format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("json");
    app.add_option("--out", g.out_path, "Write the report here instead of stdout");
    app.add_flag("--timing", g.timing, "Add wall_time to the report (breaks byte-identical output)");

    auto *verify = app.add_subcommand("verify", "Gate identities and measurement-only constructions");
    VerifyParams vp;
    verify->add_option("--only", vp.only, "Run only these checks (repeatable)");

    auto *newcomb = app.add_subcommand("newcomb", "Newcomb breaker and qutrojan circuits");
    NewcombParams np;
    newcomb->add_option("--control", np.control, "Control tactics, 0 or 1")->capture_default_str();
    newcomb->add_option("--breaker", np.breaker, "absent, I, NOT or qutrojan")->capture_default_str();
    double p_not = -1.0;
    newcomb->add_option("--p-not", p_not, "Throw the I/NOT switch at random with this NOT probability");

    auto *gamble = app.add_subcommand("gamble", "GVW gambling game");
    GambleCmdParams gp;
    gamble->add_option("--theta", gp.theta, "Alice's preparation angle")->capture_default_str();
    gamble->add_option("--p-verify", gp.p_verify, "Bob's verification probability")->capture_default_str();
    gamble->add_option("--reward", gp.reward, "Verification reward R")->capture_default_str();
    gamble->add_flag("--sweep", gp.sweep, "Add a 101-row theta sweep table");

    auto *market_cmd = app.add_subcommand("market", "Market strategy CDFs and Wigner function");
    MarketParams mp;
    std::string wigner_path;
    std::size_t grid_points = 0;
    market_cmd->add_option("spec", mp.spec_path, "Strategy spec (JSON)")->required();
    market_cmd->add_option("--grid", grid_points, "Override the number of grid points");
    market_cmd->add_option("--wigner", wigner_path, "Write the Wigner grid as CSV");

    auto *walk = app.add_subcommand("walk", "Pauli byproduct random walk survival curve");
    WalkParams wp;
    walk->add_option("--n-max", wp.n_max, "Longest survival time tabulated")->capture_default_str();

    auto *qfa = app.add_subcommand("qfa", "Quantum finite automaton acceptance");
    QfaParams qp;
    qfa->add_option("spec", qp.spec_path, "Automaton (JSON)")->required();
    qfa->add_option("--word", qp.word, "Input symbols separated by spaces or commas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageExit;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        Report report;
        if (*verify) {
            vp.seed = g.seed;
            report = cmd_verify(vp);
        } else if (*newcomb) {
            np.seed = g.seed;
            np.shots = g.trials.value_or(0);
            if (newcomb->count("--p-not")) {
                np.p_not = p_not;
            }
            report = cmd_newcomb(np);
        } else if (*gamble) {
            gp.seed = g.seed;
            gp.trials = g.trials.value_or(gp.trials);
            report = cmd_gamble(gp);
        } else if (*market_cmd) {
            if (market_cmd->count("--grid")) {
                mp.grid_points = grid_points;
            }
            MarketRun run = cmd_market(mp);
            if (!wigner_path.empty()) {
                write_text(wigner_path, market::to_csv(run.wigner));
            }
            report = std::move(run.report);
        } else if (*walk) {
            wp.seed = g.seed;
            wp.trials = g.trials.value_or(wp.trials);
            report = cmd_walk(wp);
        } else if (*qfa) {
            report = cmd_qfa(qp);
        }
        if (g.timing) {
            report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        const std::string text = render(report, g.output);
        if (g.out_path.empty()) {
            std::cout << text;
        } else {
            write_text(g.out_path, text);
        }
        return report.exit_code();
    } catch (const UsageError &e) {
        std::cerr << "qgame: " << e.what() << "\n";
        return kUsageExit;
    } catch (const ValidationError &e) {
        std::cerr << "qgame: " << e.what() << "\n";
        return kUsageExit;
    } catch (const std::exception &e) {
        std::cerr << "qgame: error: " << e.what() << "\n";
        return kUsageExit;
    }
}
