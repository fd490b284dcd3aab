#pragma once

// Hand-built 4-connected instances where the initial Manhattan heuristic has
// a depression between start and goal.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rtsearch/grid.hpp"
#include "rtsearch/lookahead.hpp"

namespace rtsearch {

struct TrapInstance {
    GridMap map;
    Cell start;
    Cell goal;
    TieBreak tie;
    std::vector<Cell> depression;     // cells of the pocket the agent starts in
    std::vector<Cell> wall_adjacent;  // pocket cells touching the wall that separates it from the goal
};

/// Three rows, n columns (n >= 5), m = n - 2:
///
///     @@@..      row 0: columns 0..m-2 blocked
///     ...@.      rows 1-2: pocket in columns 0..m-1, wall at column m
///     ..S@G
///
/// Start is the pocket cell next to the wall, goal the cell right behind
/// it. The only way out of the pocket is over the top of the wall, so the
/// Manhattan heuristic underestimates the whole pocket. Ties go down, left,
/// up, right.
inline TrapInstance build_trap_instance(std::int32_t n) {
    if (n < 5) throw std::invalid_argument("build_trap_instance: width must be at least 5");
    const std::int32_t m = n - 2;
    TrapInstance t{GridMap(n, 3, Connectivity::Four), {m - 1, 2}, {m + 1, 2},
                   TieBreak::prefer({Direction::Down, Direction::Left, Direction::Up, Direction::Right}), {}, {}};
    for (std::int32_t x = 0; x <= m - 2; ++x) t.map.set_blocked({x, 0});
    t.map.set_blocked({m, 1});
    t.map.set_blocked({m, 2});
    for (std::int32_t y = 1; y <= 2; ++y)
        for (std::int32_t x = 0; x < m; ++x) t.depression.push_back({x, y});
    t.wall_adjacent = {{m - 1, 1}, {m - 1, 2}};
    return t;
}

/// Number of times each cell occurs in a trajectory.
inline std::map<Cell, std::uint64_t> visit_counts(const std::vector<Cell>& trajectory) {
    std::map<Cell, std::uint64_t> out;
    for (auto c : trajectory) ++out[c];
    return out;
}

enum class CorridorTies : std::uint8_t {
    UpDownRightLeft,  // keeps the plain algorithms out of the right-hand region
    UpRightDownLeft,
};

struct CorridorInstance {
    GridMap map;
    Cell start;
    Cell goal;
    TieBreak tie;
    std::vector<Cell> right_region;  // free cells right of the second wall
};

/// Seven rows, n columns (n >= 6), two vertical walls: column 1 from the top
/// down to row 4 and column 3 from row 1 to the bottom. Start sits between
/// the walls at row 4, goal left of the first wall at row 4. The free area
/// right of the second wall is a heuristic lure the agent never needs.
inline CorridorInstance build_corridor_instance(std::int32_t n, CorridorTies ties) {
    if (n < 6) throw std::invalid_argument("build_corridor_instance: width must be at least 6");
    CorridorInstance c{GridMap(n, 7, Connectivity::Four), {2, 4}, {0, 4}, {}, {}};
    for (std::int32_t y = 0; y <= 4; ++y) c.map.set_blocked({1, y});
    for (std::int32_t y = 1; y <= 6; ++y) c.map.set_blocked({3, y});
    c.tie = ties == CorridorTies::UpDownRightLeft
                ? TieBreak::prefer({Direction::Up, Direction::Down, Direction::Right, Direction::Left})
                : TieBreak::prefer({Direction::Up, Direction::Right, Direction::Down, Direction::Left});
    for (std::int32_t y = 0; y < 7; ++y)
        for (std::int32_t x = 4; x < n; ++x) c.right_region.push_back({x, y});
    return c;
}

}  // namespace rtsearch
