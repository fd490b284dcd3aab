#pragma once

// Randomized property suites shared by the `verify` command and the test
// binaries. Every suite counts violations instead of stopping at the first.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtsearch/instances.hpp"
#include "rtsearch/oracle.hpp"
#include "rtsearch/search.hpp"
#include "rtsearch/trap.hpp"

namespace rtsearch {

struct SuiteReport {
    std::string name;
    std::uint64_t runs = 0;
    std::uint64_t episodes = 0;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::uint64_t unsolved = 0;  // runs that did not end Solved
    std::vector<std::string> failures;  // first few, for diagnostics

    bool ok() const { return violations == 0 && runs > 0; }

    void fail(std::string what) {
        ++violations;
        if (failures.size() < 10) failures.push_back(std::move(what));
    }
    void check(bool good, const std::string& what) {
        ++checks;
        if (!good) fail(what);
    }
    std::string summary() const {
        return name + ": " + std::to_string(runs) + " runs, " + std::to_string(episodes) + " episodes, " + std::to_string(checks) +
               " checks, " + std::to_string(violations) + " violations";
    }
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::size_t runs = 200;
    std::int32_t size = 30;
    double density = 0.25;
    std::vector<std::uint64_t> lookaheads{1, 2, 4, 8};
    MarkingScope scope = MarkingScope::Extracted;
};

/// Start/goal pair with a path between them in the true map, redrawn with
/// derived seeds until one is found.
inline std::pair<Cell, Cell> random_solvable_case(const GridMap& truth, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 10'000; ++attempt) {
        auto pair = random_case(truth, mix_seed(seed, attempt));
        if (connected(truth, pair.first, pair.second)) return pair;
    }
    throw std::runtime_error("random_solvable_case: no connected pair found");
}

namespace detail {

inline std::string run_label(const AlgorithmSpec& spec, std::uint64_t k, std::uint64_t instance) {
    return std::string(spec.cli_name()) + " k=" + std::to_string(k) + " instance " + std::to_string(instance);
}

// Mixes 4- and 8-connected maps and a few obstacle densities.
inline GridMap suite_map(const SuiteConfig& cfg, std::uint64_t i) {
    const auto conn = (i % 4 == 3) ? Connectivity::Four : Connectivity::Eight;
    return random_obstacle_map(cfg.size, cfg.size, cfg.density, mix_seed(cfg.seed, i), conn);
}

inline HValues store_h(const HeuristicStore& store) {
    return [&store](Cell c) { return store.h(c); };
}

// h as it was before the current episode's update: saved values on Closed,
// the live store elsewhere (nothing else changes during an update).
struct PreUpdateH {
    const HeuristicStore* store = nullptr;
    std::unordered_map<std::uint32_t, ExactCost> saved;

    void capture(const LookaheadWorkspace& ws, const HeuristicStore& s) {
        store = &s;
        saved.clear();
        for (auto c : ws.closed()) saved.emplace(ws.geometry().index(c), s.h(c));
    }
    HValues fn() const {
        return [this](Cell c) {
            const auto it = saved.find(store->geometry().index(c));
            return it != saved.end() ? it->second : store->h(c);
        };
    }
};

}  // namespace detail

/// h(goal) = 0, h(s) <= c(s, t) + h(t) on every belief arc and pointwise
/// non-decreasing h after every episode; every run must reach the goal.
/// Only arcs leaving Closed are re-checked per episode (no other h changes
/// and arc costs only grow); the whole map is checked at the start and end
/// of each run.
inline SuiteReport consistency_suite(const SuiteConfig& cfg, const std::vector<AlgorithmSpec>& algos = {AlgorithmSpec::all().begin(), AlgorithmSpec::all().end()}) {
    SuiteReport report{"consistency", 0, 0, 0, 0, 0, {}};
    for (std::uint64_t i = 0; i < cfg.runs; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_solvable_case(truth, mix_seed(cfg.seed, i + 0x10000));
        for (const auto& spec : algos)
            for (auto k : cfg.lookaheads) {
                const auto label = detail::run_label(spec, k, i);
                detail::PreUpdateH pre;
                SearchOptions opt;
                opt.marking_scope = cfg.scope;
                opt.record_trajectory = false;
                opt.record_episodes = false;
                opt.max_episodes = 1'000'000;
                opt.hooks.before_update = [&](const EpisodeView& v) { pre.capture(v.ws, v.store); };
                opt.hooks.after_update = [&](const EpisodeView& v) {
                    ++report.episodes;
                    const auto old_h = pre.fn();
                    for (auto c : v.ws.closed())
                        report.check(!(v.store.h(c) < old_h(c)), label + ": h decreased at " + to_string(c));
                    const auto bad = find_inconsistency(v.belief, detail::store_h(v.store), {goal}, v.ws.closed());
                    report.check(!bad, label + ": " + bad.value_or(""));
                };
                RealTimeAgent agent(truth, {goal}, spec, k, opt);
                {
                    const auto bad = find_inconsistency(agent.belief(), detail::store_h(agent.store()), {goal});
                    report.check(!bad, label + " (initial): " + bad.value_or(""));
                }
                const auto result = agent.run_trial(start);
                ++report.runs;
                if (!result.solved()) ++report.unsolved;
                report.check(result.solved(), label + ": ended " + to_string(result.outcome));
                const auto bad = find_inconsistency(agent.belief(), detail::store_h(agent.store()), {goal});
                report.check(!bad, label + " (final): " + bad.value_or(""));
            }
    }
    return report;
}

namespace detail {

inline const std::vector<std::uint64_t>& oracle_lookaheads() {
    static const std::vector<std::uint64_t> ks{1, 2, 3, 4, 8, 16, 32};
    return ks;
}

}  // namespace detail

/// The LSS learning result equals the explicit-graph Dijkstra oracle on
/// every episode, exactly.
inline SuiteReport lss_learning_suite(const SuiteConfig& cfg) {
    SuiteReport report{"lss-learning", 0, 0, 0, 0, 0, {}};
    const std::vector<AlgorithmSpec> algos{AlgorithmSpec::lss_lrta(), AlgorithmSpec::alss_lrta(), AlgorithmSpec::dalss_lrta()};
    for (std::uint64_t i = 0; i < cfg.runs; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_solvable_case(truth, mix_seed(cfg.seed, i + 0x20000));
        const auto& spec = algos[i % algos.size()];
        const auto& ks = detail::oracle_lookaheads();
        const auto k = ks[mix_seed(cfg.seed, i + 0x21000) % ks.size()];
        const auto label = detail::run_label(spec, k, i);
        std::unordered_map<std::uint32_t, ExactCost> expected;
        SearchOptions opt;
        opt.marking_scope = cfg.scope;
        opt.record_trajectory = false;
        opt.max_episodes = 1'000'000;
        opt.hooks.before_update = [&](const EpisodeView& v) { expected = lss_learning_oracle(v.ws, v.belief, detail::store_h(v.store)); };
        opt.hooks.after_update = [&](const EpisodeView& v) {
            ++report.episodes;
            for (auto c : v.ws.closed()) {
                const auto want = expected.at(v.ws.geometry().index(c));
                const auto got = v.store.h(c);
                report.check(got == want, label + " episode " + std::to_string(v.episode) + ": h" + to_string(c) + " = " +
                                              got.to_string() + ", oracle " + want.to_string());
            }
        };
        const auto result = run_search(truth, start, {goal}, spec, k, opt);
        ++report.runs;
        report.check(result.solved(), label + ": ended " + to_string(result.outcome));
    }
    return report;
}

/// RTAA learning never exceeds the oracle and matches it on the closed
/// states of the path to the min-f frontier state.
inline SuiteReport rtaa_learning_suite(const SuiteConfig& cfg) {
    SuiteReport report{"rtaa-learning", 0, 0, 0, 0, 0, {}};
    const std::vector<AlgorithmSpec> algos{AlgorithmSpec::rtaa(), AlgorithmSpec::artaa(), AlgorithmSpec::dartaa()};
    for (std::uint64_t i = 0; i < cfg.runs; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_solvable_case(truth, mix_seed(cfg.seed, i + 0x30000));
        const auto& spec = algos[i % algos.size()];
        const auto& ks = detail::oracle_lookaheads();
        const auto k = ks[mix_seed(cfg.seed, i + 0x31000) % ks.size()];
        const auto label = detail::run_label(spec, k, i);
        std::unordered_map<std::uint32_t, ExactCost> expected;
        SearchOptions opt;
        opt.record_trajectory = false;
        opt.max_episodes = 1'000'000;
        opt.hooks.before_update = [&](const EpisodeView& v) { expected = lss_learning_oracle(v.ws, v.belief, detail::store_h(v.store)); };
        opt.hooks.after_update = [&](const EpisodeView& v) {
            ++report.episodes;
            const auto where = label + " episode " + std::to_string(v.episode) + ": h";
            for (auto c : v.ws.closed()) {
                const auto want = expected.at(v.ws.geometry().index(c));
                report.check(!(v.store.h(c) > want), where + to_string(c) + " = " + v.store.h(c).to_string() + " above oracle " + want.to_string());
            }
            for (auto c : best_path_closed(v.ws)) {
                const auto want = expected.at(v.ws.geometry().index(c));
                report.check(v.store.h(c) == want, where + to_string(c) + " = " + v.store.h(c).to_string() + " on best path, oracle " + want.to_string());
            }
        };
        const auto result = run_search(truth, start, {goal}, spec, k, opt);
        ++report.runs;
        report.check(result.solved(), label + ": ended " + to_string(result.outcome));
    }
    return report;
}

/// Every state newly marked by a marking update sits in a cost-sensitive
/// depression of the pre-update heuristic. The same runs, plus runs of the
/// least-change selectors, also check that a selection other than the min-f
/// frontier state always has strictly less heuristic change than it.
inline SuiteReport marked_depression_suite(const SuiteConfig& cfg) {
    SuiteReport report{"marked-depression", 0, 0, 0, 0, 0, {}};
    const std::vector<AlgorithmSpec> algos{AlgorithmSpec::alss_lrta(), AlgorithmSpec::artaa(), AlgorithmSpec::dalss_lrta(),
                                           AlgorithmSpec::dartaa()};
    for (std::uint64_t i = 0; i < cfg.runs; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_solvable_case(truth, mix_seed(cfg.seed, i + 0x40000));
        // The two marking algorithms get every instance; the least-change
        // ones every other instance.
        for (const auto& spec : algos) {
            if (!spec.marks() && i % 2 == 1) continue;
            const auto k = cfg.lookaheads[mix_seed(cfg.seed, i + 0x41000) % cfg.lookaheads.size()];
            const auto label = detail::run_label(spec, k, i);
            detail::PreUpdateH pre;
            std::vector<Cell> unmarked;
            SearchOptions opt;
            opt.marking_scope = cfg.scope;
            opt.record_trajectory = false;
            opt.max_episodes = 1'000'000;
            opt.hooks.before_update = [&](const EpisodeView& v) {
                pre.capture(v.ws, v.store);
                unmarked.clear();
                for (auto c : v.ws.closed())
                    if (!v.store.updated(c)) unmarked.push_back(c);
                for (auto c : v.ws.frontier())
                    if (!v.store.updated(c)) unmarked.push_back(c);
                const Cell best = *v.ws.best();
                if (*v.next != best)
                    report.check(v.store.delta(best) > v.store.delta(*v.next),
                                 label + " episode " + std::to_string(v.episode) + ": selected " + to_string(*v.next) +
                                     " without smaller heuristic change than " + to_string(best));
            };
            opt.hooks.after_update = [&](const EpisodeView& v) {
                ++report.episodes;
                if (!spec.marks()) return;
                std::vector<Cell> flipped;
                for (auto c : unmarked)
                    if (v.store.updated(c)) flipped.push_back(c);
                std::string why;
                report.check(verify_marked_depression(pre.fn(), detail::store_h(v.store), v.ws, v.belief, flipped, &why),
                             label + " episode " + std::to_string(v.episode) + ": " + why);
            };
            const auto result = run_search(truth, start, {goal}, spec, k, opt);
            ++report.runs;
            report.check(result.solved(), label + ": ended " + to_string(result.outcome));
        }
    }
    return report;
}

/// Instances whose goal (even draws) or start (odd draws) is walled in by a
/// ring of obstacles. Every algorithm must report no solution. The
/// lookahead covers the whole map so a bounded search can see the sealed
/// region in full.
inline SuiteReport sealed_suite(const SuiteConfig& cfg) {
    SuiteReport report{"sealed", 0, 0, 0, 0, 0, {}};
    std::size_t instances = 0;
    for (std::uint64_t i = 0; instances < cfg.runs; ++i) {
        GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_case(truth, mix_seed(cfg.seed, i + 0x50000));
        const Cell sealed = (i % 2 == 0) ? goal : start;
        const Cell other = (i % 2 == 0) ? start : goal;
        for (int d = 0; d < 8; ++d) {
            const Cell c{sealed.x + kOffsets[static_cast<std::size_t>(d)][0], sealed.y + kOffsets[static_cast<std::size_t>(d)][1]};
            if (truth.contains(c) && c != other) truth.set_blocked(c);
        }
        if (connected(truth, start, goal)) continue;  // the endpoints were adjacent
        ++instances;
        const std::uint64_t k = truth.geometry().size();
        for (const auto& spec : AlgorithmSpec::all()) {
            SearchOptions opt;
            opt.record_trajectory = false;
            opt.max_episodes = 100'000;
            const auto result = run_search(truth, start, {goal}, spec, k, opt);
            ++report.runs;
            report.episodes += result.episodes;
            report.check(result.outcome == Outcome::NoSolution,
                         detail::run_label(spec, k, i) + ": ended " + to_string(result.outcome));
        }
    }
    return report;
}

/// Repeated trials converge and the converged trial is optimal, both on the
/// final belief and in the true map; h never decreases between trials.
inline SuiteReport convergence_suite(const SuiteConfig& cfg, std::uint64_t max_trials = 500) {
    SuiteReport report{"convergence", 0, 0, 0, 0, 0, {}};
    for (std::uint64_t i = 0; i < cfg.runs; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        const auto [start, goal] = random_solvable_case(truth, mix_seed(cfg.seed, i + 0x60000));
        const auto optimum = truth_distances(truth, {goal})[truth.geometry().index(start)];
        for (const auto& spec : AlgorithmSpec::all())
            for (auto k : cfg.lookaheads) {
                const auto label = detail::run_label(spec, k, i);
                SearchOptions opt;
                opt.marking_scope = cfg.scope;
                opt.record_trajectory = false;
                opt.record_episodes = false;
                RealTimeAgent agent(truth, {goal}, spec, k, opt);
                std::vector<ExactCost> previous = agent.store().snapshot();
                bool converged = false;
                ExactCost last_cost;
                for (std::uint64_t t = 0; t < max_trials && !converged; ++t) {
                    const auto result = agent.run_trial(start);
                    report.episodes += result.episodes;
                    if (!result.solved()) break;
                    last_cost = result.cost;
                    converged = !agent.store().changed_this_trial();
                    auto now = agent.store().snapshot();
                    bool monotone = true;
                    for (std::size_t j = 0; j < now.size() && monotone; ++j) monotone = !(now[j] < previous[j]);
                    report.check(monotone, label + ": h decreased between trials");
                    previous = std::move(now);
                }
                ++report.runs;
                report.check(converged, label + ": no convergence within " + std::to_string(max_trials) + " trials");
                if (!converged) continue;
                const auto belief_optimum = belief_distances(agent.belief(), {goal})[truth.geometry().index(start)];
                report.check(last_cost == belief_optimum,
                             label + ": converged cost " + last_cost.to_string() + ", optimum on belief " + belief_optimum.to_string());
                report.check(last_cost == optimum, label + ": converged cost " + last_cost.to_string() + ", true optimum " + optimum.to_string());
            }
    }
    return report;
}

/// On a fresh heuristic the three selection rules pick the same state.
/// Each episode is a lookahead from a random free cell over a partially
/// sensed belief.
inline SuiteReport selector_suite(const SuiteConfig& cfg, std::size_t episodes) {
    SuiteReport report{"selectors", 0, 0, 0, 0, 0, {}};
    const std::size_t per_map = 50;
    for (std::uint64_t i = 0; report.episodes < episodes; ++i) {
        const GridMap truth = detail::suite_map(cfg, i);
        ++report.runs;
        for (std::size_t j = 0; j < per_map && report.episodes < episodes; ++j) {
            const auto seed = mix_seed(cfg.seed, i * per_map + j + 0x70000);
            const auto [start, goal] = random_case(truth, seed);
            BeliefMap belief(truth);
            std::mt19937_64 rng(seed);
            for (std::uint32_t c = 0; c < truth.geometry().size(); ++c)
                if (truth.blocked(truth.geometry().cell(c)) && uniform_index(rng, 2) == 0) belief.mark_blocked(truth.geometry().cell(c));
            const GoalSet goals(truth.geometry(), {goal});
            const HeuristicStore store(truth.geometry(), distance_heuristic(truth.geometry(), {goal}));
            const auto k = std::uint64_t{1} << uniform_index(rng, 7);
            LookaheadWorkspace ws(truth.geometry());
            bounded_astar(belief, start, goals, store, k, ws);
            if (ws.open().empty()) continue;
            ++report.episodes;
            LookaheadWorkspace a = ws, b = ws;
            const Cell best = select_best(ws, store);
            const Cell unmarked = select_best_unmarked(a, store);
            const Cell least = select_least_delta(b, store);
            report.check(best == unmarked && best == least,
                         "map " + std::to_string(i) + " case " + std::to_string(j) + ": " + to_string(best) + " / " + to_string(unmarked) +
                             " / " + to_string(least));
        }
    }
    return report;
}

/// Least-squares fit y = a + b x; returns {a, b, r_squared}.
inline std::array<double, 3> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
    const double slope = cxy / vx;
    const double r2 = vy == 0.0 ? 1.0 : (cxy * cxy) / (vx * vy);
    return {(sy - slope * sx) / n, slope, r2};
}

struct TrapRow {
    std::int32_t width;
    std::size_t depression_size;
    ExactCost cost;
    std::uint64_t episodes;
    std::vector<std::uint64_t> interior_visits;  // pocket cells away from the wall
    std::vector<std::uint64_t> wall_visits;      // pocket cells touching the wall
};

/// LRTA* (k = 1) over the trap family.
inline std::vector<TrapRow> trap_rows(std::int32_t from, std::int32_t to) {
    std::vector<TrapRow> rows;
    for (std::int32_t n = from; n <= to; ++n) {
        const auto t = build_trap_instance(n);
        SearchOptions opt;
        opt.tie = t.tie;
        const auto result = run_search(t.map, t.start, {t.goal}, AlgorithmSpec::lss_lrta(), 1, opt);
        const auto visits = visit_counts(result.trajectory);
        TrapRow row{n, t.depression.size(), result.cost, result.episodes, {}, {}};
        for (auto c : t.depression) {
            const bool by_wall = std::find(t.wall_adjacent.begin(), t.wall_adjacent.end(), c) != t.wall_adjacent.end();
            const auto it = visits.find(c);
            (by_wall ? row.wall_visits : row.interior_visits).push_back(it == visits.end() ? 0 : it->second);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Pocket cells visited 3 times, wall-side ones twice, cost linear in the
/// pocket size.
inline SuiteReport trap_suite(std::int32_t from = 5, std::int32_t to = 12) {
    SuiteReport report{"trap", 0, 0, 0, 0, 0, {}};
    std::vector<double> size, cost;
    for (const auto& row : trap_rows(from, to)) {
        ++report.runs;
        report.episodes += row.episodes;
        const auto w = "width " + std::to_string(row.width);
        for (auto v : row.interior_visits) report.check(v == 3, w + ": interior pocket cell visited " + std::to_string(v) + " times");
        for (auto v : row.wall_visits) report.check(v == 2, w + ": wall-side pocket cell visited " + std::to_string(v) + " times");
        size.push_back(static_cast<double>(row.depression_size));
        cost.push_back(row.cost.to_double());
    }
    const auto fit = linear_fit(size, cost);
    report.check(fit[2] >= 0.99, "linear fit R^2 = " + std::to_string(fit[2]));
    return report;
}

}  // namespace rtsearch
