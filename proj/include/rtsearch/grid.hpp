#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsearch/exact_cost.hpp"

namespace rtsearch {

struct Cell {
    std::int32_t x = 0;  // column
    std::int32_t y = 0;  // row

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    friend constexpr auto operator<=>(const Cell& a, const Cell& b) {
        // row-major
        if (a.y != b.y) return a.y <=> b.y;
        return a.x <=> b.x;
    }
};

inline std::string to_string(Cell c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

enum class Connectivity : std::uint8_t { Four = 4, Eight = 8 };

/// Unit offsets. The first four are the cardinal moves.
inline constexpr std::array<std::array<int, 2>, 8> kOffsets{{
    {0, 1}, {-1, 0}, {0, -1}, {1, 0},     // down, left, up, right
    {-1, 1}, {-1, -1}, {1, -1}, {1, 1},   // diagonals
}};

/// Dimensions and move rule shared by a ground-truth map and the agent's
/// belief about it.
struct GridGeometry {
    std::int32_t width = 0;
    std::int32_t height = 0;
    Connectivity connectivity = Connectivity::Eight;

    std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
    std::uint32_t index(Cell c) const { return static_cast<std::uint32_t>(c.y) * static_cast<std::uint32_t>(width) + static_cast<std::uint32_t>(c.x); }
    Cell cell(std::uint32_t index) const {
        return {static_cast<std::int32_t>(index % static_cast<std::uint32_t>(width)),
                static_cast<std::int32_t>(index / static_cast<std::uint32_t>(width))};
    }
    int neighbor_count() const { return static_cast<int>(connectivity); }

    friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// Ground-truth terrain. Immutable once built.
class GridMap {
public:
    GridMap() = default;
    GridMap(std::int32_t width, std::int32_t height, Connectivity connectivity = Connectivity::Eight)
        : geometry_{width, height, connectivity} {
        if (width <= 0 || height <= 0) throw std::invalid_argument("GridMap: dimensions must be positive");
        blocked_.assign(geometry_.size(), 0);
    }

    /// Builds a map from rows of '.' (free) and '@' (blocked).
    static GridMap from_rows(const std::vector<std::string>& rows, Connectivity connectivity = Connectivity::Eight) {
        if (rows.empty()) throw std::invalid_argument("GridMap: no rows");
        GridMap map(static_cast<std::int32_t>(rows.front().size()), static_cast<std::int32_t>(rows.size()), connectivity);
        for (std::size_t y = 0; y < rows.size(); ++y) {
            if (rows[y].size() != rows.front().size()) throw std::invalid_argument("GridMap: ragged rows");
            for (std::size_t x = 0; x < rows[y].size(); ++x) {
                if (rows[y][x] == '@') map.set_blocked({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
            }
        }
        return map;
    }

    const GridGeometry& geometry() const { return geometry_; }
    std::int32_t width() const { return geometry_.width; }
    std::int32_t height() const { return geometry_.height; }
    Connectivity connectivity() const { return geometry_.connectivity; }
    bool contains(Cell c) const { return geometry_.contains(c); }

    bool blocked(Cell c) const { return blocked_[geometry_.index(c)] != 0; }
    bool free(Cell c) const { return contains(c) && !blocked(c); }

    void set_blocked(Cell c, bool value = true) {
        if (!contains(c)) throw std::out_of_range("GridMap: cell " + to_string(c) + " outside map");
        blocked_[geometry_.index(c)] = value ? 1 : 0;
    }

    std::size_t free_count() const {
        std::size_t n = 0;
        for (auto b : blocked_) n += (b == 0);
        return n;
    }

    std::vector<std::string> rows() const {
        std::vector<std::string> out(static_cast<std::size_t>(height()), std::string(static_cast<std::size_t>(width()), '.'));
        for (std::int32_t y = 0; y < height(); ++y)
            for (std::int32_t x = 0; x < width(); ++x)
                if (blocked({x, y})) out[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = '@';
        return out;
    }

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    GridGeometry geometry_;
    std::vector<std::uint8_t> blocked_;
};

struct Arc {
    Cell to;
    ExactCost cost;
};

/// Fixed-capacity successor list; grids have at most eight neighbors.
class SuccessorList {
public:
    void push(Arc a) { arcs_[size_++] = a; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Arc* begin() const { return arcs_.data(); }
    const Arc* end() const { return arcs_.data() + size_; }
    const Arc& operator[](std::size_t i) const { return arcs_[i]; }

private:
    std::array<Arc, 8> arcs_{};
    std::size_t size_ = 0;
};

namespace detail {

/// Visits the arcs leaving `s` on a grid whose blocked status is given by
/// `is_blocked`. A diagonal move needs both adjacent cardinal cells open.
template <typename BlockedFn, typename Visit>
void for_each_arc(const GridGeometry& geo, Cell s, BlockedFn&& is_blocked, Visit&& visit) {
    if (is_blocked(s)) return;
    const int n = geo.neighbor_count();
    for (int i = 0; i < n; ++i) {
        const Cell t{s.x + kOffsets[static_cast<std::size_t>(i)][0], s.y + kOffsets[static_cast<std::size_t>(i)][1]};
        if (!geo.contains(t) || is_blocked(t)) continue;
        if (i >= 4) {
            if (is_blocked(Cell{t.x, s.y}) || is_blocked(Cell{s.x, t.y})) continue;
            visit(t, ExactCost::sqrt2());
        } else {
            visit(t, ExactCost::unit());
        }
    }
}

}  // namespace detail

/// Successors in the true terrain.
inline SuccessorList successors(const GridMap& truth, Cell s) {
    SuccessorList out;
    detail::for_each_arc(truth.geometry(), s, [&](Cell c) { return truth.blocked(c); },
                         [&](Cell t, ExactCost c) { out.push({t, c}); });
    return out;
}

/// The agent's view of the terrain under the free-space assumption: a cell is
/// blocked only once it has been sensed as blocked. Arc costs therefore only
/// ever increase (to infinity) as the agent explores.
class BeliefMap {
public:
    BeliefMap() = default;
    explicit BeliefMap(const GridGeometry& geometry) : geometry_(geometry), known_blocked_(geometry.size(), 0) {}
    explicit BeliefMap(const GridMap& truth) : BeliefMap(truth.geometry()) {}

    const GridGeometry& geometry() const { return geometry_; }
    bool known_blocked(Cell c) const { return known_blocked_[geometry_.index(c)] != 0; }
    std::size_t known_blocked_count() const { return count_; }

    /// Records `c` as blocked. Returns true if this is new information.
    bool mark_blocked(Cell c) {
        auto& slot = known_blocked_[geometry_.index(c)];
        if (slot) return false;
        slot = 1;
        ++count_;
        return true;
    }

    template <typename Visit>
    void for_each_successor(Cell s, Visit&& visit) const {
        detail::for_each_arc(geometry_, s, [this](Cell c) { return known_blocked(c); }, std::forward<Visit>(visit));
    }

    /// Cost of moving between two cells under the current belief; infinity if
    /// the cells are not adjacent or the move is blocked.
    ExactCost arc_cost(Cell from, Cell to) const {
        ExactCost result = ExactCost::infinity();
        for_each_successor(from, [&](Cell t, ExactCost c) {
            if (t == to) result = c;
        });
        return result;
    }

    std::vector<Cell> known_blocked_cells() const {
        std::vector<Cell> out;
        for (std::uint32_t i = 0; i < known_blocked_.size(); ++i)
            if (known_blocked_[i]) out.push_back(geometry_.cell(i));
        return out;
    }

private:
    GridGeometry geometry_;
    std::vector<std::uint8_t> known_blocked_;
    std::size_t count_ = 0;
};

/// Successors under the agent's belief.
inline SuccessorList successors(const BeliefMap& belief, Cell s) {
    SuccessorList out;
    belief.for_each_successor(s, [&](Cell t, ExactCost c) { out.push({t, c}); });
    return out;
}

/// Senses the geometric neighbors of `s` and records the blocked ones.
/// Returns only the cells that were not already known.
inline std::vector<Cell> sense(const GridMap& truth, BeliefMap& belief, Cell s) {
    std::vector<Cell> discovered;
    const auto& geo = truth.geometry();
    for (int i = 0; i < geo.neighbor_count(); ++i) {
        const Cell t{s.x + kOffsets[static_cast<std::size_t>(i)][0], s.y + kOffsets[static_cast<std::size_t>(i)][1]};
        if (geo.contains(t) && truth.blocked(t) && belief.mark_blocked(t)) discovered.push_back(t);
    }
    return discovered;
}

inline ExactCost octile(Cell a, Cell b) {
    const std::int64_t dx = std::abs(a.x - b.x);
    const std::int64_t dy = std::abs(a.y - b.y);
    const std::int64_t lo = dx < dy ? dx : dy;
    const std::int64_t hi = dx < dy ? dy : dx;
    return {hi - lo, lo};
}

inline ExactCost manhattan(Cell a, Cell b) {
    return {std::abs(static_cast<std::int64_t>(a.x) - b.x) + std::abs(static_cast<std::int64_t>(a.y) - b.y), 0};
}

/// The standard heuristic for a move rule: octile distance on 8-connected
/// grids, Manhattan distance on 4-connected grids.
inline ExactCost grid_distance(Connectivity connectivity, Cell a, Cell b) {
    return connectivity == Connectivity::Eight ? octile(a, b) : manhattan(a, b);
}

}  // namespace rtsearch
