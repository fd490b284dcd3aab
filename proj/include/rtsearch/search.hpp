#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rtsearch/algorithm.hpp"
#include "rtsearch/grid.hpp"
#include "rtsearch/heuristic_store.hpp"
#include "rtsearch/learning.hpp"
#include "rtsearch/lookahead.hpp"
#include "rtsearch/selection.hpp"

namespace rtsearch {

struct EpisodeStats {
    std::uint64_t expansions = 0;
    std::uint64_t percolations = 0;
    double planning_ms = 0.0;  // lookahead + selection + update
    std::uint64_t moves = 0;
    ExactCost cost;
};

enum class Outcome : std::uint8_t { Solved, NoSolution, EpisodeLimit };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Solved: return "solved";
        case Outcome::NoSolution: return "nosolution";
        case Outcome::EpisodeLimit: return "episode-limit";
    }
    return "?";
}

/// Read-only view handed to instrumentation hooks. `next` is unset in
/// after_lookahead.
struct EpisodeView {
    std::uint64_t episode;
    Cell current;
    std::optional<Cell> next;
    const LookaheadWorkspace& ws;
    const BeliefMap& belief;
    const HeuristicStore& store;
};

/// Optional callbacks around the planning steps. Time spent in hooks is not
/// counted as planning time.
struct EpisodeHooks {
    std::function<void(const EpisodeView&)> after_lookahead;  // Open intact, nothing selected yet
    std::function<void(const EpisodeView&)> before_update;    // next chosen, h not yet learned
    std::function<void(const EpisodeView&)> after_update;
};

struct SearchOptions {
    TieBreak tie;
    MarkingScope marking_scope = MarkingScope::Extracted;
    InitialHeuristic h0_mode = InitialHeuristic::TrialStart;
    std::uint64_t max_episodes = 0;  // 0: unlimited
    bool record_trajectory = true;
    bool record_episodes = true;
    EpisodeHooks hooks;
};

struct TrialResult {
    Outcome outcome = Outcome::NoSolution;
    ExactCost cost;
    std::uint64_t episodes = 0;
    std::uint64_t expansions = 0;
    std::uint64_t percolations = 0;
    double planning_ms = 0.0;
    std::vector<EpisodeStats> episode_stats;
    std::vector<Cell> trajectory;  // every cell occupied, start included
    std::vector<ExactCost> final_h;

    bool solved() const { return outcome == Outcome::Solved; }
    double expansions_per_episode() const { return episodes ? static_cast<double>(expansions) / static_cast<double>(episodes) : 0.0; }
    double percolations_per_episode() const { return episodes ? static_cast<double>(percolations) / static_cast<double>(episodes) : 0.0; }
    double ms_per_episode() const { return episodes ? planning_ms / static_cast<double>(episodes) : 0.0; }
};

/// An agent in unknown terrain. Belief and learned heuristic persist across
/// calls to run_trial, which is what repeated trials need.
class RealTimeAgent {
public:
    RealTimeAgent(const GridMap& truth, std::vector<Cell> goals, AlgorithmSpec spec, std::uint64_t k, SearchOptions options = {},
                  HeuristicFn heuristic = {})
        : truth_(&truth),
          spec_(spec),
          k_(k),
          options_(std::move(options)),
          belief_(truth),
          ws_(truth.geometry()) {
        if (k == 0) throw std::invalid_argument("lookahead must be positive");
        if (goals.empty()) throw std::invalid_argument("at least one goal is required");
        for (auto g : goals)
            if (!truth.free(g)) throw std::invalid_argument("goal " + to_string(g) + " is blocked or outside the map");
        if (!heuristic) heuristic = distance_heuristic(truth.geometry(), goals);
        goals_ = GoalSet(truth.geometry(), std::move(goals));
        store_ = HeuristicStore(truth.geometry(), std::move(heuristic), options_.h0_mode);
    }

    const BeliefMap& belief() const { return belief_; }
    const HeuristicStore& store() const { return store_; }
    HeuristicStore& store() { return store_; }
    const GoalSet& goals() const { return goals_; }
    const AlgorithmSpec& spec() const { return spec_; }
    std::uint64_t lookahead() const { return k_; }

    /// One trial from `start`. Starts a new trial in the heuristic store:
    /// h0 is re-snapshotted (TrialStart mode) and marks are cleared.
    TrialResult run_trial(Cell start) {
        if (!truth_->free(start)) throw std::invalid_argument("start " + to_string(start) + " is blocked or outside the map");
        using Clock = std::chrono::steady_clock;
        const auto ms_since = [](Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); };

        if (started_) store_.begin_trial();
        started_ = true;

        TrialResult result;
        Cell current = start;
        if (options_.record_trajectory) result.trajectory.push_back(current);
        sense(*truth_, belief_, current);

        while (!goals_.contains(current)) {
            if (options_.max_episodes && result.episodes >= options_.max_episodes) {
                result.outcome = Outcome::EpisodeLimit;
                finish(result);
                return result;
            }
            EpisodeStats stats;
            const auto t0 = Clock::now();
            bounded_astar(belief_, current, goals_, store_, k_, ws_, options_.tie);
            stats.planning_ms += ms_since(t0);
            if (ws_.open().empty()) {
                result.outcome = Outcome::NoSolution;
                finish(result);
                return result;
            }
            const std::uint64_t episode = result.episodes;
            if (options_.hooks.after_lookahead) options_.hooks.after_lookahead({episode, current, std::nullopt, ws_, belief_, store_});

            const auto t1 = Clock::now();
            const Cell next = select(spec_.select());
            stats.planning_ms += ms_since(t1);
            if (options_.hooks.before_update) options_.hooks.before_update({episode, current, next, ws_, belief_, store_});

            const auto t2 = Clock::now();
            update(spec_.update());
            stats.planning_ms += ms_since(t2);
            if (options_.hooks.after_update) options_.hooks.after_update({episode, current, next, ws_, belief_, store_});

            stats.expansions = ws_.expansions();
            stats.percolations = ws_.percolations();
            walk(extract_path(ws_, current, next), current, stats, result);

            ++result.episodes;
            result.expansions += stats.expansions;
            result.percolations += stats.percolations;
            result.planning_ms += stats.planning_ms;
            result.cost += stats.cost;
            if (options_.record_episodes) result.episode_stats.push_back(stats);
        }
        result.outcome = Outcome::Solved;
        finish(result);
        return result;
    }

private:
    Cell select(SelectRule rule) {
        switch (rule) {
            case SelectRule::BestF: return select_best(ws_, store_);
            case SelectRule::BestUnmarked: return select_best_unmarked(ws_, store_);
            case SelectRule::LeastDelta: return select_least_delta(ws_, store_);
        }
        throw std::logic_error("unknown selection rule");
    }

    void update(UpdateRule rule) {
        switch (rule) {
            case UpdateRule::Lss: update_lss(ws_, belief_, store_); return;
            case UpdateRule::LssMarking: update_lss_marking(ws_, belief_, store_, options_.marking_scope); return;
            case UpdateRule::Rtaa: update_rtaa(ws_, store_); return;
            case UpdateRule::RtaaMarking: update_rtaa_marking(ws_, store_); return;
        }
        throw std::logic_error("unknown update rule");
    }

    // Follows the planned path, sensing on arrival at every cell, and stops
    // as soon as an arc still ahead has become blocked.
    void walk(const std::vector<Cell>& path, Cell& current, EpisodeStats& stats, TrialResult& result) {
        for (std::size_t i = 1; i < path.size(); ++i) {
            const ExactCost c = belief_.arc_cost(path[i - 1], path[i]);
            if (c.is_infinite()) throw std::logic_error("walk: planned arc is blocked");
            stats.cost += c;
            ++stats.moves;
            current = path[i];
            if (options_.record_trajectory) result.trajectory.push_back(current);
            if (sense(*truth_, belief_, current).empty()) continue;
            bool blocked_ahead = false;
            for (std::size_t j = i + 1; j < path.size() && !blocked_ahead; ++j)
                blocked_ahead = belief_.arc_cost(path[j - 1], path[j]).is_infinite();
            if (blocked_ahead) break;
        }
    }

    void finish(TrialResult& result) const { result.final_h = store_.snapshot(); }

    const GridMap* truth_;
    AlgorithmSpec spec_;
    std::uint64_t k_;
    SearchOptions options_;
    GoalSet goals_;
    BeliefMap belief_;
    HeuristicStore store_;
    LookaheadWorkspace ws_;
    bool started_ = false;
};

/// A single trial on fresh belief and heuristic.
inline TrialResult run_search(const GridMap& truth, Cell start, std::vector<Cell> goals, AlgorithmSpec spec, std::uint64_t k,
                              SearchOptions options = {}) {
    RealTimeAgent agent(truth, std::move(goals), spec, k, std::move(options));
    return agent.run_trial(start);
}

inline TrialResult solve(const GridMap& truth, Cell start, Cell goal, AlgorithmSpec spec, std::uint64_t k, SearchOptions options = {}) {
    return run_search(truth, start, {goal}, spec, k, std::move(options));
}

struct TrialSequence {
    std::vector<TrialResult> trials;
    bool converged = false;
};

/// Repeats trials from `start`, carrying h and the sensed obstacles over,
/// until a solved trial leaves every h-value unchanged or `max_trials` runs
/// out. The agent is handed back so callers can inspect the final state.
inline TrialSequence run_trials(RealTimeAgent& agent, Cell start, std::uint64_t max_trials) {
    TrialSequence out;
    for (std::uint64_t t = 0; t < max_trials; ++t) {
        out.trials.push_back(agent.run_trial(start));
        if (!out.trials.back().solved()) break;
        if (!agent.store().changed_this_trial()) {
            out.converged = true;
            break;
        }
    }
    return out;
}

inline TrialSequence run_trials(const GridMap& truth, Cell start, std::vector<Cell> goals, AlgorithmSpec spec, std::uint64_t k,
                                std::uint64_t max_trials, SearchOptions options = {}) {
    RealTimeAgent agent(truth, std::move(goals), spec, k, std::move(options));
    return run_trials(agent, start, max_trials);
}

}  // namespace rtsearch
