// rtsearch: benchmark, trial, verification and fixture runner.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtsearch/bench.hpp"
#include "rtsearch/verification.hpp"

namespace {

using namespace rtsearch;

// Replaces every "--config FILE" with the flags the file spells out, one
// "key = value" per line ('#' starts a comment). Boolean keys take
// true/false. Flags given later on the command line still apply.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
            continue;
        }
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
        std::string line;
        std::size_t lineno = 0;
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (value == "true") {
                out.push_back("--" + key);
            } else if (value != "false") {
                out.push_back("--" + key);
                out.push_back(value);
            }
        }
    }
    return out;
}

struct RunArgs {
    std::vector<std::string> maps;
    std::vector<std::string> scenarios;
    std::size_t cases = 50;
    std::uint64_t seed = 1;
    std::vector<std::string> algos;
    std::vector<std::uint64_t> ks;
    std::string out = "bench_out";
    bool pin = false;
    unsigned jobs = 1;
    std::uint64_t max_trials = 500;
    std::string connectivity = "8";
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--map", a.maps, "Map file or gen:random:<seed>[:WxH] / gen:rooms:<seed>[:WxH] (repeatable)");
    cmd->add_option("--scen", a.scenarios, "MovingAI scenario file (repeatable)");
    cmd->add_option("--cases", a.cases, "Cases per map")->check(CLI::PositiveNumber)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--seed", a.seed, "Seed for case draws")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--algo", a.algos, "lss-lrta, alss-lrta, dalss-lrta, rtaa, artaa, dartaa (repeatable; default all)");
    cmd->add_option("--k", a.ks, "Lookahead (repeatable; default 1..512 by powers of two)")->check(CLI::PositiveNumber);
    cmd->add_option("--out", a.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_flag("--pin", a.pin, "Run every case on one worker thread (low-noise timing)");
    cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--connectivity", a.connectivity, "4 or 8")->check(CLI::IsMember({"4", "8"}))->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--config", "Flat key=value file mirroring these flags");
}

BenchConfig make_config(const RunArgs& a, TrialMode mode) {
    BenchConfig cfg;
    cfg.maps = a.maps;
    cfg.scenarios = a.scenarios;
    if (cfg.maps.empty() && cfg.scenarios.empty())
        for (int i = 1; i <= 5; ++i) {
            cfg.maps.push_back("gen:random:" + std::to_string(i));
            cfg.maps.push_back("gen:rooms:" + std::to_string(i));
        }
    cfg.cases = a.cases;
    cfg.seed = a.seed;
    if (!a.algos.empty()) {
        cfg.algorithms.clear();
        for (const auto& name : a.algos) cfg.algorithms.push_back(AlgorithmSpec::from_name(name));
    }
    if (!a.ks.empty()) cfg.lookaheads = a.ks;
    cfg.mode = mode;
    cfg.max_trials = a.max_trials;
    cfg.jobs = a.pin ? 1 : a.jobs;
    cfg.connectivity = a.connectivity == "4" ? Connectivity::Four : Connectivity::Eight;
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    fn(out);
}

int run_bench_command(const RunArgs& a, TrialMode mode) {
    const auto cfg = make_config(a, mode);
    const auto result = run_bench(cfg);
    for (const auto& e : result.errors) std::cerr << "warning: " << e << '\n';
    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "cases.csv", [&](std::ostream& o) { write_cases_csv(o, result.cases); });
    write_file(dir / "aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(o, result.aggregates); });
    write_file(dir / "plotdata.csv", [&](std::ostream& o) { emit_plotdata(o, result.aggregates); });
    write_file(dir / "worst_case.csv", [&](std::ostream& o) { write_worst_case_csv(o, worst_case_compare(result.aggregates)); });

    write_aggregate_csv(std::cout, result.aggregates);
    std::cout << '\n';
    const auto tally = [&](const char* base, const char* cand) {
        for (auto k : cfg.lookaheads) {
            const auto t = paired_tally(result.cases, base, cand, k);
            if (t.total() == 0) continue;
            std::cout << cand << " vs " << base << " k=" << k << ": better " << t.wins << ", same " << t.ties << ", worse " << t.losses
                      << " (" << fixed(100.0 * t.win_rate(), 1) << "% better)\n";
        }
    };
    tally("RTAA*", "daRTAA*");
    tally("LSS-LRTA*", "daLSS-LRTA*");
    tally("LSS-LRTA*", "aLSS-LRTA*");
    tally("RTAA*", "aRTAA*");
    std::cout << "wrote " << (dir / "cases.csv").string() << ", aggregate.csv, plotdata.csv, worst_case.csv\n";
    return result.errors.empty() ? 0 : 2;
}

struct VerifyArgs {
    std::vector<std::string> suites;
    std::size_t runs = 200;
    std::uint64_t seed = 1;
    std::int32_t size = 30;
    std::string scope = "extracted";
};

int run_verify_command(const VerifyArgs& a) {
    SuiteConfig cfg;
    cfg.runs = a.runs;
    cfg.seed = a.seed;
    cfg.size = a.size;
    cfg.scope = a.scope == "closed" ? MarkingScope::ClosedOnly : MarkingScope::Extracted;
    auto suites = a.suites;
    if (suites.empty()) suites = {"consistency", "lss-learning", "rtaa-learning", "marked-depression"};
    bool all_ok = true;
    for (const auto& name : suites) {
        SuiteReport r;
        if (name == "consistency") {
            r = consistency_suite(cfg);
        } else if (name == "lss-learning") {
            r = lss_learning_suite(cfg);
        } else if (name == "rtaa-learning") {
            r = rtaa_learning_suite(cfg);
        } else if (name == "marked-depression") {
            r = marked_depression_suite(cfg);
        } else if (name == "sealed") {
            r = sealed_suite(cfg);
        } else if (name == "convergence") {
            auto c = cfg;
            c.lookaheads = {1, 4};
            r = convergence_suite(c);
        } else if (name == "selectors") {
            r = selector_suite(cfg, cfg.runs * 50);
        } else if (name == "trap") {
            r = trap_suite();
        }
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.summary() << '\n';
        for (const auto& f : r.failures) std::cout << "    " << f << '\n';
        all_ok = all_ok && r.ok();
    }
    return all_ok ? 0 : 1;
}

int run_trap_command(std::int32_t from, std::int32_t to, std::int32_t corridor) {
    std::cout << "width,pocket_cells,cost,episodes,interior_visits,wall_visits\n";
    std::vector<double> x, y;
    for (const auto& row : trap_rows(from, to)) {
        const auto join = [](const std::vector<std::uint64_t>& v) {
            std::string s;
            for (auto n : v) s += (s.empty() ? "" : " ") + std::to_string(n);
            return s;
        };
        std::cout << row.width << ',' << row.depression_size << ',' << row.cost.to_string() << ',' << row.episodes << ','
                  << join(row.interior_visits) << ',' << join(row.wall_visits) << '\n';
        x.push_back(static_cast<double>(row.depression_size));
        y.push_back(row.cost.to_double());
    }
    if (x.size() >= 2) {
        const auto fit = linear_fit(x, y);
        std::cout << "# cost = " << fixed(fit[0], 3) << " + " << fixed(fit[1], 3) << " * pocket_cells, R^2 = " << fixed(fit[2], 6) << '\n';
    }
    std::cout << "\ncorridor_ties,algorithm,k,cost,right_region_cells_visited,right_region_cells\n";
    for (auto ties : {CorridorTies::UpDownRightLeft, CorridorTies::UpRightDownLeft}) {
        const auto c = build_corridor_instance(corridor, ties);
        for (const auto& spec : AlgorithmSpec::all()) {
            SearchOptions opt;
            opt.tie = c.tie;
            const auto r = run_search(c.map, c.start, {c.goal}, spec, 1, opt);
            const auto visits = visit_counts(r.trajectory);
            std::size_t seen = 0;
            for (auto cell : c.right_region) seen += visits.count(cell);
            std::cout << (ties == CorridorTies::UpDownRightLeft ? "up-down-right-left" : "up-right-down-left") << ',' << spec.name()
                      << ",1," << r.cost.to_string() << ',' << seen << ',' << c.right_region.size() << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time heuristic search on grids: benchmarks, convergence trials and oracle checks"};
    app.require_subcommand(1);

    RunArgs bench_args, trial_args;
    auto* bench = app.add_subcommand("bench", "Single-trial benchmark; writes cases/aggregate/plotdata/worst_case CSVs");
    add_run_options(bench, bench_args);
    auto* trials = app.add_subcommand("trials", "Repeated trials per case until the heuristic stops changing");
    add_run_options(trials, trial_args);
    trials->add_option("--max-trials", trial_args.max_trials, "Trial budget per case")->check(CLI::PositiveNumber);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Randomized oracle suites; exit status 1 on any violation");
    verify->add_option("--suite", verify_args.suites, "consistency, lss-learning, rtaa-learning, marked-depression, sealed, convergence, selectors, trap")
        ->check(CLI::IsMember({"consistency", "lss-learning", "rtaa-learning", "marked-depression", "sealed", "convergence", "selectors", "trap"}));
    verify->add_option("--runs", verify_args.runs, "Instances per suite")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_args.seed);
    verify->add_option("--size", verify_args.size, "Map side length")->check(CLI::Range(4, 512));
    verify->add_option("--scope", verify_args.scope, "Which swept states may be marked: extracted or closed")
        ->check(CLI::IsMember({"extracted", "closed"}));

    std::int32_t trap_from = 5, trap_to = 12, corridor = 10;
    auto* trap = app.add_subcommand("trap", "Run LRTA* over the trap family and all algorithms on the corridor family");
    trap->add_option("--from", trap_from, "Smallest trap width")->check(CLI::Range(5, 1000));
    trap->add_option("--to", trap_to, "Largest trap width")->check(CLI::Range(5, 1000));
    trap->add_option("--corridor", corridor, "Corridor width")->check(CLI::Range(6, 1000));

    std::string plot_in, plot_out;
    auto* plot = app.add_subcommand("plotdata", "Cost versus time per episode from an aggregate CSV");
    plot->add_option("--in", plot_in, "aggregate.csv written by bench")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", plot_out, "Output CSV (default stdout)");

    try {
        // CLI11 takes the argument vector in reverse order.
        auto args = expand_config({argv + 1, argv + argc});
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*bench) return run_bench_command(bench_args, TrialMode::Single);
        if (*trials) return run_bench_command(trial_args, TrialMode::Convergence);
        if (*verify) return run_verify_command(verify_args);
        if (*trap) return run_trap_command(trap_from, trap_to, corridor);
        if (*plot) {
            std::ifstream in(plot_in);
            const auto rows = read_aggregate_csv(in);
            if (plot_out.empty()) {
                emit_plotdata(std::cout, rows);
            } else {
                write_file(plot_out, [&](std::ostream& o) { emit_plotdata(o, rows); });
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
