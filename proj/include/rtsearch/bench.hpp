#pragma once

// Benchmark harness: runs algorithm x lookahead grids over sets of maps and
// aggregates the usual real-time search metrics.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rtsearch/instances.hpp"
#include "rtsearch/movingai.hpp"
#include "rtsearch/search.hpp"

namespace rtsearch {

enum class TrialMode : std::uint8_t { Single, Convergence };

struct BenchConfig {
    std::vector<std::string> maps;       // file paths or gen:random:<seed>[:WxH] / gen:rooms:<seed>[:WxH]
    std::vector<std::string> scenarios;  // MovingAI .scen files; their maps are resolved next to the file
    std::size_t cases = 50;
    std::uint64_t seed = 1;
    std::vector<AlgorithmSpec> algorithms{AlgorithmSpec::all().begin(), AlgorithmSpec::all().end()};
    std::vector<std::uint64_t> lookaheads{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    TrialMode mode = TrialMode::Single;
    std::uint64_t max_trials = 500;
    std::uint64_t max_episodes = 10'000'000;
    unsigned jobs = 1;
    Connectivity connectivity = Connectivity::Eight;
};

/// One (map, case, algorithm, k) measurement.
struct CaseRow {
    std::string map;
    std::size_t case_id = 0;
    Cell start;
    Cell goal;
    std::string algorithm;
    std::uint64_t k = 0;
    Outcome outcome = Outcome::NoSolution;
    ExactCost cost;  // convergence mode: cost of the final trial
    std::uint64_t episodes = 0;
    std::uint64_t expansions = 0;
    std::uint64_t percolations = 0;
    std::uint64_t trials = 1;
    bool converged = false;
    ExactCost first_trial_cost;
    double planning_ms = 0.0;
};

struct AggregateRow {
    std::string algorithm;
    std::uint64_t k = 0;
    std::size_t cases = 0;
    std::size_t solved = 0;
    std::size_t nosolution = 0;
    std::size_t unfinished = 0;  // episode or trial budget exhausted
    double avg_cost = 0.0;
    double avg_episodes = 0.0;
    double total_time_ms = 0.0;
    double time_per_episode_ms = 0.0;
    double expansions_per_episode = 0.0;
    double percolations_per_episode = 0.0;
};

struct BenchResult {
    std::vector<CaseRow> cases;
    std::vector<AggregateRow> aggregates;
    std::vector<std::string> errors;  // maps that could not be loaded
};

/// Resolves a map argument. Generated maps default to 64x64.
inline GridMap resolve_map(const std::string& spec, Connectivity connectivity = Connectivity::Eight) {
    if (spec.rfind("gen:", 0) != 0) return load_map(spec, connectivity);
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 3 || parts.size() > 4) throw std::invalid_argument("bad generated map spec '" + spec + "'");
    std::int32_t w = 64, h = 64;
    if (parts.size() == 4 && std::sscanf(parts[3].c_str(), "%dx%d", &w, &h) != 2)
        throw std::invalid_argument("bad size in map spec '" + spec + "'");
    std::uint64_t seed = 0;
    try {
        seed = std::stoull(parts[2]);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad seed in map spec '" + spec + "'");
    }
    if (parts[1] == "random") return random_obstacle_map(w, h, 0.25, seed, connectivity);
    if (parts[1] == "rooms") return room_map(w, h, seed, 12, connectivity);
    throw std::invalid_argument("unknown generator '" + parts[1] + "' in map spec '" + spec + "'");
}

/// Fixed-point rendering so CSV output does not depend on stream state.
inline std::string fixed(double v, int digits = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

namespace detail {

struct BenchProblem {
    std::string map_name;
    const GridMap* map;
    std::size_t case_id;
    Cell start;
    Cell goal;
    bool solvable;
};

inline CaseRow run_case(const BenchProblem& p, const AlgorithmSpec& spec, std::uint64_t k, const BenchConfig& cfg) {
    CaseRow row;
    row.map = p.map_name;
    row.case_id = p.case_id;
    row.start = p.start;
    row.goal = p.goal;
    row.algorithm = spec.name();
    row.k = k;
    // A bounded lookahead cannot prove unsolvability when the start's
    // component is larger than k, so unsolvable draws are settled up front.
    if (!p.solvable) {
        row.outcome = Outcome::NoSolution;
        row.cost = ExactCost::infinity();
        row.first_trial_cost = ExactCost::infinity();
        row.trials = 0;
        return row;
    }
    SearchOptions opt;
    opt.record_trajectory = false;
    opt.record_episodes = false;
    opt.max_episodes = cfg.max_episodes;
    RealTimeAgent agent(*p.map, {p.goal}, spec, k, opt);
    const std::uint64_t trials = cfg.mode == TrialMode::Single ? 1 : cfg.max_trials;
    row.trials = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto r = agent.run_trial(p.start);
        ++row.trials;
        row.outcome = r.outcome;
        row.cost = r.cost;
        if (t == 0) row.first_trial_cost = r.cost;
        row.episodes += r.episodes;
        row.expansions += r.expansions;
        row.percolations += r.percolations;
        row.planning_ms += r.planning_ms;
        if (!r.solved()) break;
        if (!agent.store().changed_this_trial()) {
            row.converged = true;
            break;
        }
    }
    return row;
}

}  // namespace detail

/// Averages over solved cases; per-episode figures are totals over solved
/// cases divided by their total episode count.
inline std::vector<AggregateRow> aggregate(const std::vector<CaseRow>& cases, const std::vector<AlgorithmSpec>& algorithms,
                                           const std::vector<std::uint64_t>& lookaheads) {
    std::vector<AggregateRow> out;
    for (const auto& spec : algorithms)
        for (auto k : lookaheads) {
            AggregateRow row;
            row.algorithm = spec.name();
            row.k = k;
            double cost = 0, episodes = 0, expansions = 0, percolations = 0, time = 0;
            for (const auto& c : cases) {
                if (c.algorithm != row.algorithm || c.k != k) continue;
                ++row.cases;
                if (c.outcome == Outcome::NoSolution) ++row.nosolution;
                if (c.outcome == Outcome::EpisodeLimit) ++row.unfinished;
                if (c.outcome != Outcome::Solved) continue;
                ++row.solved;
                cost += c.cost.to_double();
                episodes += static_cast<double>(c.episodes);
                expansions += static_cast<double>(c.expansions);
                percolations += static_cast<double>(c.percolations);
                time += c.planning_ms;
            }
            if (row.solved) {
                row.avg_cost = cost / static_cast<double>(row.solved);
                row.avg_episodes = episodes / static_cast<double>(row.solved);
            }
            row.total_time_ms = time;
            if (episodes > 0) {
                row.time_per_episode_ms = time / episodes;
                row.expansions_per_episode = expansions / episodes;
                row.percolations_per_episode = percolations / episodes;
            }
            out.push_back(row);
        }
    return out;
}

inline BenchResult run_bench(const BenchConfig& cfg) {
    if (cfg.cases == 0) throw std::invalid_argument("bench: cases must be positive");
    for (auto k : cfg.lookaheads)
        if (k == 0) throw std::invalid_argument("bench: lookahead values must be positive");
    if (cfg.algorithms.empty() || cfg.lookaheads.empty()) throw std::invalid_argument("bench: nothing to run");

    BenchResult result;
    std::vector<std::pair<std::string, GridMap>> maps;
    std::vector<detail::BenchProblem> problems;
    maps.reserve(cfg.maps.size() + cfg.scenarios.size() * 4);

    for (std::size_t m = 0; m < cfg.maps.size(); ++m) {
        try {
            maps.emplace_back(cfg.maps[m], resolve_map(cfg.maps[m], cfg.connectivity));
        } catch (const std::exception& e) {
            result.errors.push_back(cfg.maps[m] + ": " + e.what());
        }
    }
    const std::size_t generated_maps = maps.size();
    std::map<std::string, std::size_t> map_index;
    struct ScenCase {
        std::size_t map;
        Cell start, goal;
    };
    std::vector<std::vector<ScenCase>> scen_cases;
    for (const auto& scen_path : cfg.scenarios) {
        try {
            std::ifstream in(scen_path);
            if (!in) throw std::runtime_error("cannot open scenario file");
            const auto rows = parse_scen(in);
            std::vector<ScenCase> picked;
            for (const auto& r : rows) {
                if (picked.size() >= cfg.cases) break;
                auto path = (std::filesystem::path(scen_path).parent_path() / r.map_name).string();
                if (!std::filesystem::exists(path)) path = r.map_name;
                auto it = map_index.find(path);
                if (it == map_index.end()) {
                    maps.emplace_back(path, load_map(path, cfg.connectivity));
                    it = map_index.emplace(path, maps.size() - 1).first;
                }
                picked.push_back({it->second, r.start, r.goal});
            }
            scen_cases.push_back(std::move(picked));
        } catch (const std::exception& e) {
            result.errors.push_back(scen_path + ": " + e.what());
        }
    }

    // Problem list: random draws on plain maps, listed cases for scenarios.
    for (std::size_t m = 0; m < generated_maps; ++m) {
        const auto& [name, map] = maps[m];
        if (map.free_count() < 2) {
            result.errors.push_back(name + ": fewer than two free cells");
            continue;
        }
        for (std::size_t c = 0; c < cfg.cases; ++c) {
            const auto [s, g] = random_case(map, mix_seed(mix_seed(cfg.seed, m), c));
            problems.push_back({name, &map, c, s, g, connected(map, s, g)});
        }
    }
    for (const auto& list : scen_cases)
        for (std::size_t c = 0; c < list.size(); ++c) {
            const auto& [name, map] = maps[list[c].map];
            const Cell s = list[c].start, g = list[c].goal;
            if (!map.free(s) || !map.free(g)) {
                result.errors.push_back(name + ": scenario case " + std::to_string(c) + " has a blocked endpoint");
                continue;
            }
            problems.push_back({name, &map, c, s, g, connected(map, s, g)});
        }

    // Work items in a fixed order; workers fill preassigned slots, so the
    // output does not depend on scheduling.
    const std::size_t per_problem = cfg.algorithms.size() * cfg.lookaheads.size();
    result.cases.resize(problems.size() * per_problem);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < result.cases.size(); i = next++) {
            const auto& p = problems[i / per_problem];
            const auto& spec = cfg.algorithms[(i % per_problem) / cfg.lookaheads.size()];
            const auto k = cfg.lookaheads[i % cfg.lookaheads.size()];
            result.cases[i] = detail::run_case(p, spec, k, cfg);
        }
    };
    const unsigned jobs = std::max(1u, cfg.jobs);
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    result.aggregates = aggregate(result.cases, cfg.algorithms, cfg.lookaheads);
    return result;
}

// ---------------------------------------------------------------------------
// CSV output. Columns whose names end in _ms are wall-clock measurements;
// every other column is reproducible from the configuration.

inline void write_cases_csv(std::ostream& out, const std::vector<CaseRow>& rows) {
    out << "map,case,start_x,start_y,goal_x,goal_y,algorithm,k,outcome,cost_exact,cost,episodes,expansions,percolations,"
           "trials,converged,first_trial_cost,planning_ms\n";
    for (const auto& r : rows) {
        const bool has_cost = r.outcome == Outcome::Solved;
        out << r.map << ',' << r.case_id << ',' << r.start.x << ',' << r.start.y << ',' << r.goal.x << ',' << r.goal.y << ','
            << r.algorithm << ',' << r.k << ',' << to_string(r.outcome) << ',' << (has_cost ? r.cost.to_string() : "") << ','
            << (has_cost ? fixed(r.cost.to_double()) : "") << ',' << r.episodes << ',' << r.expansions << ',' << r.percolations << ','
            << r.trials << ',' << (r.converged ? 1 : 0) << ','
            << (r.trials > 0 && !r.first_trial_cost.is_infinite() ? fixed(r.first_trial_cost.to_double()) : "") << ','
            << fixed(r.planning_ms, 3) << '\n';
    }
}

inline void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
    out << "algorithm,k,cases,solved,nosolution,unfinished,avg_cost,avg_episodes,expansions_per_episode,percolations_per_episode,"
           "total_time_ms,time_per_episode_ms\n";
    for (const auto& r : rows)
        out << r.algorithm << ',' << r.k << ',' << r.cases << ',' << r.solved << ',' << r.nosolution << ',' << r.unfinished << ','
            << fixed(r.avg_cost) << ',' << fixed(r.avg_episodes) << ',' << fixed(r.expansions_per_episode) << ','
            << fixed(r.percolations_per_episode) << ',' << fixed(r.total_time_ms, 3) << ',' << fixed(r.time_per_episode_ms, 6) << '\n';
}

/// Cost versus planning time per episode, one series per algorithm with
/// points in increasing k. Header: algorithm,k,time_per_episode_ms,avg_cost.
inline void emit_plotdata(std::ostream& out, std::vector<AggregateRow> rows) {
    if (rows.empty()) throw std::invalid_argument("emit_plotdata: no rows");
    std::vector<std::string> order;
    for (const auto& r : rows)
        if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
    std::stable_sort(rows.begin(), rows.end(), [&](const AggregateRow& a, const AggregateRow& b) {
        const auto ia = std::find(order.begin(), order.end(), a.algorithm) - order.begin();
        const auto ib = std::find(order.begin(), order.end(), b.algorithm) - order.begin();
        return ia != ib ? ia < ib : a.k < b.k;
    });
    out << "algorithm,k,time_per_episode_ms,avg_cost\n";
    for (const auto& r : rows) out << r.algorithm << ',' << r.k << ',' << fixed(r.time_per_episode_ms) << ',' << fixed(r.avg_cost) << '\n';
}

/// Reads aggregate rows back from write_aggregate_csv output.
inline std::vector<AggregateRow> read_aggregate_csv(std::istream& in) {
    std::vector<AggregateRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("aggregate CSV is empty");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) header.push_back(f);
    }
    const auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("aggregate CSV lacks column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto c_algo = col("algorithm"), c_k = col("k"), c_cost = col("avg_cost"), c_time = col("time_per_episode_ms");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
        if (f.size() < header.size()) throw std::runtime_error("aggregate CSV line " + std::to_string(lineno) + " is short");
        AggregateRow r;
        r.algorithm = f[c_algo];
        r.k = std::stoull(f[c_k]);
        r.avg_cost = std::stod(f[c_cost]);
        r.time_per_episode_ms = std::stod(f[c_time]);
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Comparisons

/// baseline.avg_cost / candidate.avg_cost; infinite when only the candidate
/// is free of cost.
inline double improvement_factor(const AggregateRow& baseline, const AggregateRow& candidate) {
    if (candidate.avg_cost == 0.0) return baseline.avg_cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return baseline.avg_cost / candidate.avg_cost;
}

struct WinTally {
    std::size_t wins = 0;    // candidate strictly cheaper
    std::size_t ties = 0;
    std::size_t losses = 0;

    std::size_t total() const { return wins + ties + losses; }
    double win_rate() const { return total() ? static_cast<double>(wins) / static_cast<double>(total()) : 0.0; }
};

/// Case-by-case comparison over problems both algorithms solved at lookahead k.
inline WinTally paired_tally(const std::vector<CaseRow>& rows, const std::string& baseline, const std::string& candidate, std::uint64_t k) {
    std::map<std::pair<std::string, std::size_t>, ExactCost> base;
    for (const auto& r : rows)
        if (r.algorithm == baseline && r.k == k && r.outcome == Outcome::Solved) base[{r.map, r.case_id}] = r.cost;
    WinTally t;
    for (const auto& r : rows) {
        if (r.algorithm != candidate || r.k != k || r.outcome != Outcome::Solved) continue;
        const auto it = base.find({r.map, r.case_id});
        if (it == base.end()) continue;
        if (r.cost < it->second)
            ++t.wins;
        else if (r.cost == it->second)
            ++t.ties;
        else
            ++t.losses;
    }
    return t;
}

inline const AggregateRow* find_row(const std::vector<AggregateRow>& rows, const std::string& algorithm, std::uint64_t k) {
    for (const auto& r : rows)
        if (r.algorithm == algorithm && r.k == k) return &r;
    return nullptr;
}

struct WorstCaseRow {
    std::uint64_t k = 0;
    double candidate_cost = 0.0;                 // daRTAA* at k
    std::optional<double> baseline_same_k;       // RTAA* at k
    std::optional<double> baseline_double_k;     // RTAA* at 2k
    std::string note;
};

/// Pairs the candidate at k with the baseline at k and at 2k, which charges
/// the candidate for doing up to twice the heap work per episode.
inline std::vector<WorstCaseRow> worst_case_compare(const std::vector<AggregateRow>& rows, const std::string& baseline = "RTAA*",
                                                    const std::string& candidate = "daRTAA*") {
    std::vector<WorstCaseRow> out;
    for (const auto& r : rows) {
        if (r.algorithm != candidate) continue;
        WorstCaseRow w;
        w.k = r.k;
        w.candidate_cost = r.avg_cost;
        if (const auto* b = find_row(rows, baseline, r.k)) w.baseline_same_k = b->avg_cost;
        if (const auto* b = find_row(rows, baseline, 2 * r.k))
            w.baseline_double_k = b->avg_cost;
        else
            w.note = "no " + baseline + " row at k=" + std::to_string(2 * r.k);
        out.push_back(w);
    }
    std::sort(out.begin(), out.end(), [](const WorstCaseRow& a, const WorstCaseRow& b) { return a.k < b.k; });
    return out;
}

inline void write_worst_case_csv(std::ostream& out, const std::vector<WorstCaseRow>& rows) {
    out << "k,candidate_cost,baseline_cost_k,baseline_cost_2k,factor_k,factor_2k,note\n";
    for (const auto& r : rows) {
        const auto factor = [&](const std::optional<double>& b) {
            if (!b) return std::string();
            AggregateRow base, cand;
            base.avg_cost = *b;
            cand.avg_cost = r.candidate_cost;
            return fixed(improvement_factor(base, cand));
        };
        out << r.k << ',' << fixed(r.candidate_cost) << ',' << (r.baseline_same_k ? fixed(*r.baseline_same_k) : "") << ','
            << (r.baseline_double_k ? fixed(*r.baseline_double_k) : "") << ',' << factor(r.baseline_same_k) << ','
            << factor(r.baseline_double_k) << ',' << r.note << '\n';
    }
}

}  // namespace rtsearch
