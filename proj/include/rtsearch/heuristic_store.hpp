#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rtsearch/grid.hpp"

namespace rtsearch {

class GoalSet {
public:
    GoalSet() = default;
    GoalSet(const GridGeometry& geometry, std::vector<Cell> goals) : geometry_(geometry), goals_(std::move(goals)), flag_(geometry.size(), 0) {
        for (auto g : goals_) {
            if (!geometry.contains(g)) throw std::out_of_range("GoalSet: goal " + to_string(g) + " outside map");
            flag_[geometry.index(g)] = 1;
        }
    }

    bool contains(Cell c) const { return flag_[geometry_.index(c)] != 0; }
    bool contains(std::uint32_t index) const { return flag_[index] != 0; }
    const std::vector<Cell>& cells() const { return goals_; }
    bool empty() const { return goals_.empty(); }

private:
    GridGeometry geometry_;
    std::vector<Cell> goals_;
    std::vector<std::uint8_t> flag_;
};

using HeuristicFn = std::function<ExactCost(Cell)>;

/// Distance to the nearest goal under the grid's free-space metric (octile
/// or Manhattan). Consistent on the obstacle-free belief.
inline HeuristicFn distance_heuristic(const GridGeometry& geometry, std::vector<Cell> goals) {
    return [conn = geometry.connectivity, goals = std::move(goals)](Cell c) {
        ExactCost best = ExactCost::infinity();
        for (auto g : goals) best = min(best, grid_distance(conn, c, g));
        return best;
    };
}

/// How h0 is defined within a trial.
enum class InitialHeuristic : std::uint8_t {
    TrialStart,  // h0 is h as it stood when the current trial began
    Input,       // h0 is always the heuristic given as input
};

/// Learned heuristic h, the reference snapshot h0, and the per-trial
/// "updated" (in-a-depression) marks.
///
/// Cells that were never written read through to the input heuristic. h0 is
/// materialized per cell on the first write of a trial; until then it equals
/// the current h.
class HeuristicStore {
public:
    HeuristicStore() = default;
    HeuristicStore(const GridGeometry& geometry, HeuristicFn input, InitialHeuristic mode = InitialHeuristic::TrialStart)
        : geometry_(geometry),
          input_(std::move(input)),
          mode_(mode),
          h_(geometry.size()),
          learned_(geometry.size(), 0),
          h0_(geometry.size()),
          h0_stamp_(geometry.size(), 0),
          mark_stamp_(geometry.size(), 0) {}

    const GridGeometry& geometry() const { return geometry_; }
    InitialHeuristic initial_mode() const { return mode_; }

    ExactCost input(Cell c) const { return input_(c); }

    ExactCost h(Cell c) const { return h(geometry_.index(c), c); }
    ExactCost h(std::uint32_t i, Cell c) const { return learned_[i] ? h_[i] : input_(c); }

    ExactCost h0(Cell c) const {
        if (mode_ == InitialHeuristic::Input) return input_(c);
        const auto i = geometry_.index(c);
        return h0_stamp_[i] == trial_ ? h0_[i] : h(i, c);
    }

    /// h - h0; never negative while learning is monotone.
    /// Both infinite counts as no change.
    ExactCost delta(Cell c) const {
        const ExactCost base = h0(c);
        return base.is_infinite() ? ExactCost::zero() : h(c) - base;
    }

    void set_h(Cell c, ExactCost value) {
        const auto i = geometry_.index(c);
        const ExactCost old = h(i, c);
        if (old == value) return;
        if (h0_stamp_[i] != trial_) {
            h0_[i] = old;
            h0_stamp_[i] = trial_;
        }
        h_[i] = value;
        learned_[i] = 1;
        changed_ = true;
        ++writes_;
    }

    bool updated(Cell c) const { return mark_stamp_[geometry_.index(c)] == trial_; }
    void mark_updated(Cell c) { mark_stamp_[geometry_.index(c)] = trial_; }

    /// Starts a new trial: h carries over, h0 is re-snapshot (in TrialStart
    /// mode) and every mark is cleared.
    void begin_trial() {
        ++trial_;
        changed_ = false;
    }

    std::uint32_t trial() const { return trial_; }
    bool changed_this_trial() const { return changed_; }
    std::uint64_t writes() const { return writes_; }

    /// Dense copy of h over the whole map.
    std::vector<ExactCost> snapshot() const {
        std::vector<ExactCost> out(geometry_.size());
        for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = h(i, geometry_.cell(i));
        return out;
    }

private:
    GridGeometry geometry_;
    HeuristicFn input_;
    InitialHeuristic mode_ = InitialHeuristic::TrialStart;
    std::vector<ExactCost> h_;
    std::vector<std::uint8_t> learned_;
    std::vector<ExactCost> h0_;
    std::vector<std::uint32_t> h0_stamp_;
    std::vector<std::uint32_t> mark_stamp_;
    std::uint32_t trial_ = 1;
    bool changed_ = false;
    std::uint64_t writes_ = 0;
};

}  // namespace rtsearch
