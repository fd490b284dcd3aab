#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsearch/binary_heap.hpp"
#include "rtsearch/grid.hpp"
#include "rtsearch/heuristic_store.hpp"

namespace rtsearch {

enum class Direction : std::uint8_t { Down = 0, Left = 1, Up = 2, Right = 3 };

/// Final tie-break among states with equal f and g.
///
/// The default is row-major cell order. A direction priority makes the
/// cardinal neighbors of the search root rank first, in the given order,
/// which is how hand-traced examples on 4-connected grids are usually stated
/// (e.g. "prefer down, then left, then up, then right"). States that are not
/// cardinal neighbors of the root fall back to row-major order.
struct TieBreak {
    std::vector<Direction> directions;

    static TieBreak row_major() { return {}; }
    static TieBreak prefer(std::vector<Direction> order) { return {std::move(order)}; }

    std::uint64_t rank(const GridGeometry& geo, Cell root, Cell c) const {
        for (std::size_t i = 0; i < directions.size(); ++i) {
            const auto& off = kOffsets[static_cast<std::size_t>(directions[i])];
            if (c.x == root.x + off[0] && c.y == root.y + off[1]) return i;
        }
        return 4 + geo.index(c);
    }
};

/// Open-list priority: f ascending, then g descending, then tie rank.
struct OpenKey {
    ExactCost f;
    ExactCost g;
    std::uint64_t rank = 0;
};

struct OpenBefore {
    bool operator()(const OpenKey& a, const OpenKey& b) const {
        if (const auto c = a.f <=> b.f; c != 0) return c < 0;
        if (const auto c = a.g <=> b.g; c != 0) return c > 0;
        return a.rank < b.rank;
    }
};

/// Key for queues ordered by h (the learning sweep).
struct HKey {
    ExactCost h;
    std::uint64_t rank = 0;
};

struct HBefore {
    bool operator()(const HKey& a, const HKey& b) const {
        if (const auto c = a.h <=> b.h; c != 0) return c < 0;
        return a.rank < b.rank;
    }
};

using OpenHeap = IndexedBinaryHeap<OpenKey, OpenBefore>;
using HHeap = IndexedBinaryHeap<HKey, HBefore>;

/// Dense per-cell tentative values for the learning sweep, invalidated by
/// stamp like the rest of the workspace.
class SweepScratch {
public:
    SweepScratch() = default;
    explicit SweepScratch(std::size_t cells) : value_(cells), stamp_(cells, 0) {}

    void begin() { ++current_; }
    void set_pending(std::uint32_t id, ExactCost v) {
        stamp_[id] = current_;
        value_[id] = v;
    }
    bool pending(std::uint32_t id) const { return stamp_[id] == current_; }
    void settle(std::uint32_t id) { stamp_[id] = 0; }
    const ExactCost& value(std::uint32_t id) const { return value_[id]; }

private:
    std::vector<ExactCost> value_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t current_ = 0;
};

/// State of one bounded A* lookahead: g-values, back pointers, Open and
/// Closed, plus the effort counters of the episode.
///
/// Per-cell data is invalidated by bumping a stamp, so starting a new
/// episode costs nothing proportional to the map size.
class LookaheadWorkspace {
public:
    LookaheadWorkspace() = default;
    explicit LookaheadWorkspace(const GridGeometry& geometry)
        : geometry_(geometry),
          g_(geometry.size()),
          back_(geometry.size()),
          stamp_(geometry.size(), 0),
          closed_stamp_(geometry.size(), 0),
          open_(geometry.size()),
          sweep_(geometry.size()),
          scratch_(geometry.size()) {}

    const GridGeometry& geometry() const { return geometry_; }

    void reset(Cell root, TieBreak tie) {
        ++stamp_value_;
        root_ = root;
        tie_ = std::move(tie);
        open_.clear();
        open_.reset_percolations();
        closed_.clear();
        frontier_.clear();
        best_.reset();
        expansions_ = 0;
        extra_percolations_ = 0;
    }

    Cell root() const { return root_; }
    const TieBreak& tie() const { return tie_; }

    std::uint64_t rank(Cell c) const { return tie_.rank(geometry_, root_, c); }

    bool generated(Cell c) const { return stamp_[geometry_.index(c)] == stamp_value_; }
    ExactCost g(Cell c) const { return generated(c) ? g_[geometry_.index(c)] : ExactCost::infinity(); }
    std::optional<Cell> back(Cell c) const {
        if (!generated(c) || c == root_) return std::nullopt;
        return geometry_.cell(back_[geometry_.index(c)]);
    }

    bool in_closed(Cell c) const { return closed_stamp_[geometry_.index(c)] == stamp_value_; }
    bool in_open(Cell c) const { return open_.contains(geometry_.index(c)); }

    /// Closed states in expansion order.
    const std::vector<Cell>& closed() const { return closed_; }
    /// Open as it stood when the lookahead finished. Selection procedures
    /// may drain the heap afterwards; this list is unaffected.
    const std::vector<Cell>& frontier() const { return frontier_; }
    /// Minimum-f frontier state (under the tie-break) when the lookahead finished.
    std::optional<Cell> best() const { return best_; }

    OpenHeap& open() { return open_; }
    const OpenHeap& open() const { return open_; }

    std::uint64_t expansions() const { return expansions_; }
    std::uint64_t percolations() const { return open_.percolations() + extra_percolations_; }
    void add_percolations(std::uint64_t n) { extra_percolations_ += n; }

    OpenKey open_key(Cell c, ExactCost h) const {
        const ExactCost g = this->g(c);
        return {g + h, g, rank(c)};
    }

    /// Scratch queue for learning sweeps, sized to the map.
    HHeap& sweep_queue() { return sweep_; }
    SweepScratch& sweep_scratch() { return scratch_; }

    // Mutators used by bounded_astar.
    void set_g(Cell c, ExactCost g, std::optional<Cell> parent) {
        const auto i = geometry_.index(c);
        stamp_[i] = stamp_value_;
        g_[i] = g;
        if (parent) back_[i] = geometry_.index(*parent);
    }
    void close(Cell c) {
        closed_stamp_[geometry_.index(c)] = stamp_value_;
        closed_.push_back(c);
    }
    void count_expansion() { ++expansions_; }
    void finish() {
        frontier_.clear();
        open_.for_each([&](std::uint32_t id, const OpenKey&) { frontier_.push_back(geometry_.cell(id)); });
        if (!open_.empty()) best_ = geometry_.cell(open_.top());
    }

private:
    GridGeometry geometry_;
    std::vector<ExactCost> g_;
    std::vector<std::uint32_t> back_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> closed_stamp_;
    std::uint32_t stamp_value_ = 0;
    Cell root_{};
    TieBreak tie_;
    OpenHeap open_;
    HHeap sweep_;
    SweepScratch scratch_;
    std::vector<Cell> closed_;
    std::vector<Cell> frontier_;
    std::optional<Cell> best_;
    std::uint64_t expansions_ = 0;
    std::uint64_t extra_percolations_ = 0;
};

/// A* from `start` over the belief graph expanding at most `k` states.
///
/// The loop stops as soon as some minimum-f state in Open is a goal; that
/// goal stays in Open and is never expanded. When `start` is itself a goal
/// nothing is expanded and Open is {start}. An empty Open after the call
/// means no goal is reachable in the belief.
inline void bounded_astar(const BeliefMap& belief, Cell start, const GoalSet& goals, const HeuristicStore& store,
                          std::uint64_t k, LookaheadWorkspace& ws, TieBreak tie = {}) {
    if (k == 0) throw std::invalid_argument("bounded_astar: lookahead must be positive");
    if (belief.known_blocked(start)) throw std::invalid_argument("bounded_astar: start " + to_string(start) + " is blocked");
    const auto& geo = belief.geometry();
    ws.reset(start, std::move(tie));
    auto& open = ws.open();

    ws.set_g(start, ExactCost::zero(), std::nullopt);
    open.push(geo.index(start), ws.open_key(start, store.h(start)));

    const auto goal_at_min_f = [&] {
        const ExactCost fmin = open.top_key().f;
        for (auto goal : goals.cells()) {
            const auto id = geo.index(goal);
            if (open.contains(id) && open.key(id).f == fmin) return true;
        }
        return false;
    };

    while (!open.empty() && ws.expansions() < k && !goal_at_min_f()) {
        const Cell s = geo.cell(open.pop());
        ws.close(s);
        const ExactCost gs = ws.g(s);
        belief.for_each_successor(s, [&](Cell t, ExactCost c) {
            if (ws.in_closed(t)) return;  // cannot improve under a consistent h
            const ExactCost candidate = gs + c;
            if (candidate < ws.g(t)) {
                ws.set_g(t, candidate, s);
                const auto id = geo.index(t);
                if (open.contains(id)) open.erase(id);
                open.push(id, ws.open_key(t, store.h(t)));
            }
        });
        ws.count_expansion();
    }
    ws.finish();
}

/// Cells from `start` to `target` along the A* back pointers.
inline std::vector<Cell> extract_path(const LookaheadWorkspace& ws, Cell start, Cell target) {
    if (ws.g(target).is_infinite())
        throw std::invalid_argument("extract_path: " + to_string(target) + " was not reached by the lookahead");
    std::vector<Cell> path{target};
    Cell c = target;
    while (c != start) {
        auto parent = ws.back(c);
        if (!parent) throw std::logic_error("extract_path: back pointers do not lead to " + to_string(start));
        c = *parent;
        path.push_back(c);
    }
    return {path.rbegin(), path.rend()};
}

}  // namespace rtsearch
