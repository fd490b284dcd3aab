#pragma once

// Problem generation: seeded start/goal draws and synthetic benchmark maps.

#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rtsearch/grid.hpp"

namespace rtsearch {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix_seed(mix_seed(a) ^ (b * 0xd1b54a32d192ed03ULL)); }

/// Uniform draw in [0, n). std::uniform_int_distribution is not specified
/// bit-for-bit across standard libraries, so draws are done by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// Random start/goal pair on free cells. Deterministic per seed, start != goal.
/// Solvability is not checked.
inline std::pair<Cell, Cell> random_case(const GridMap& truth, std::uint64_t seed) {
    std::vector<Cell> free_cells;
    for (std::int32_t y = 0; y < truth.height(); ++y)
        for (std::int32_t x = 0; x < truth.width(); ++x)
            if (!truth.blocked({x, y})) free_cells.push_back({x, y});
    if (free_cells.size() < 2) throw std::invalid_argument("random_case: map needs at least two free cells");
    std::mt19937_64 rng(mix_seed(seed));
    const auto a = uniform_index(rng, free_cells.size());
    auto b = uniform_index(rng, free_cells.size() - 1);
    if (b >= a) ++b;
    return {free_cells[a], free_cells[b]};
}

/// Cells reachable from `from` in the true terrain.
inline std::vector<std::uint8_t> reachable_set(const GridMap& truth, Cell from) {
    const auto& geo = truth.geometry();
    std::vector<std::uint8_t> seen(geo.size(), 0);
    if (!truth.free(from)) return seen;
    std::deque<Cell> queue{from};
    seen[geo.index(from)] = 1;
    while (!queue.empty()) {
        const Cell s = queue.front();
        queue.pop_front();
        for (const auto& arc : successors(truth, s)) {
            auto& flag = seen[geo.index(arc.to)];
            if (!flag) {
                flag = 1;
                queue.push_back(arc.to);
            }
        }
    }
    return seen;
}

inline bool connected(const GridMap& truth, Cell a, Cell b) {
    return truth.free(a) && truth.free(b) && reachable_set(truth, a)[truth.geometry().index(b)] != 0;
}

/// Uniform random obstacles at the given density.
inline GridMap random_obstacle_map(std::int32_t width, std::int32_t height, double density, std::uint64_t seed,
                                   Connectivity connectivity = Connectivity::Eight) {
    GridMap map(width, height, connectivity);
    std::mt19937_64 rng(mix_seed(seed, 0x6f62737463ULL));
    const auto threshold = static_cast<std::uint64_t>(density * 1'000'000.0);
    for (std::int32_t y = 0; y < height; ++y)
        for (std::int32_t x = 0; x < width; ++x)
            if (uniform_index(rng, 1'000'000) < threshold) map.set_blocked({x, y});
    return map;
}

/// Rooms separated by one-cell walls with scattered pillars. Doorways
/// follow a random spanning tree over the rooms, so every room is
/// reachable, plus a few extra doors that close loops. The tree leaves are
/// the dead-end rooms that game maps have and uniform noise lacks.
inline GridMap room_map(std::int32_t width, std::int32_t height, std::uint64_t seed, std::int32_t room_size = 12,
                        Connectivity connectivity = Connectivity::Eight) {
    GridMap map(width, height, connectivity);
    std::mt19937_64 rng(mix_seed(seed, 0x726f6f6d73ULL));
    const auto jitter = [&](std::int32_t lo, std::int32_t hi) {
        return lo + static_cast<std::int32_t>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    };
    // Wall positions along each axis.
    std::vector<std::int32_t> xs, ys;
    for (std::int32_t x = jitter(room_size / 2, room_size); x < width - 3; x += jitter(room_size - 3, room_size + 3)) xs.push_back(x);
    for (std::int32_t y = jitter(room_size / 2, room_size); y < height - 3; y += jitter(room_size - 3, room_size + 3)) ys.push_back(y);
    for (auto x : xs)
        for (std::int32_t y = 0; y < height; ++y) map.set_blocked({x, y});
    for (auto y : ys)
        for (std::int32_t x = 0; x < width; ++x) map.set_blocked({x, y});

    // Room spans between consecutive walls.
    const auto spans = [](const std::vector<std::int32_t>& cuts, std::int32_t extent) {
        std::vector<std::pair<std::int32_t, std::int32_t>> out;
        std::int32_t lo = 0;
        for (auto c : cuts) {
            out.emplace_back(lo, c - 1);
            lo = c + 1;
        }
        out.emplace_back(lo, extent - 1);
        return out;
    };
    const auto cols = spans(xs, width), rows = spans(ys, height);
    const auto nx = cols.size(), ny = rows.size();

    // Candidate doors: between horizontally adjacent rooms through wall
    // xs[i], and between vertically adjacent rooms through wall ys[j].
    struct Door {
        std::size_t a, b;
        bool vertical_wall;
        std::size_t wall, span;
    };
    std::vector<Door> doors;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i) doors.push_back({j * nx + i, j * nx + i + 1, true, i, j});
    for (std::size_t j = 0; j + 1 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) doors.push_back({j * nx + i, (j + 1) * nx + i, false, j, i});
    for (std::size_t i = doors.size(); i > 1; --i) std::swap(doors[i - 1], doors[uniform_index(rng, i)]);

    std::vector<std::size_t> parent(nx * ny);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    const auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<Cell> opened;
    for (const auto& d : doors) {
        const bool joins = find(d.a) != find(d.b);
        if (!joins && uniform_index(rng, 100) >= 15) continue;
        if (joins) parent[find(d.a)] = find(d.b);
        const auto [lo, hi] = d.vertical_wall ? rows[d.span] : cols[d.span];
        const auto at = jitter(lo, hi);
        const auto wide = at + 1 <= hi && uniform_index(rng, 2) == 0;
        for (std::int32_t t = at; t <= at + (wide ? 1 : 0); ++t) {
            const Cell c = d.vertical_wall ? Cell{xs[d.wall], t} : Cell{t, ys[d.wall]};
            map.set_blocked(c, false);
            opened.push_back(c);
        }
    }

    // Pillars inside rooms, kept off doorways and their neighbors.
    std::vector<std::uint8_t> keep_clear(map.geometry().size(), 0);
    for (auto c : opened)
        for (std::int32_t dy = -1; dy <= 1; ++dy)
            for (std::int32_t dx = -1; dx <= 1; ++dx) {
                const Cell n{c.x + dx, c.y + dy};
                if (map.contains(n)) keep_clear[map.geometry().index(n)] = 1;
            }
    const auto pillars = static_cast<std::int32_t>(map.geometry().size() / 40);
    for (std::int32_t i = 0; i < pillars; ++i) {
        const Cell c{jitter(0, width - 1), jitter(0, height - 1)};
        if (!keep_clear[map.geometry().index(c)]) map.set_blocked(c);
    }
    return map;
}

}  // namespace rtsearch
