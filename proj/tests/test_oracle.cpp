#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "rtsearch/instances.hpp"
#include "rtsearch/learning.hpp"
#include "rtsearch/oracle.hpp"
#include "rtsearch/trap.hpp"

using namespace rtsearch;

namespace {

BeliefMap full_belief(const GridMap& map) {
    BeliefMap b(map);
    for (std::uint32_t i = 0; i < map.geometry().size(); ++i)
        if (!map.free(map.geometry().cell(i))) b.mark_blocked(map.geometry().cell(i));
    return b;
}

// Every simple path from s that stays inside `cells` until its last step,
// which lands on t.
ExactCost brute_restricted(const BeliefMap& belief, const std::vector<Cell>& cells, Cell s, Cell t) {
    auto inside = [&](Cell c) { return std::find(cells.begin(), cells.end(), c) != cells.end(); };
    ExactCost best = ExactCost::infinity();
    std::vector<Cell> path{s};
    std::function<void(Cell, ExactCost)> dfs = [&](Cell u, ExactCost cost) {
        belief.for_each_successor(u, [&](Cell v, ExactCost c) {
            if (v == t) best = min(best, cost + c);
            if (!inside(v) || std::find(path.begin(), path.end(), v) != path.end()) return;
            path.push_back(v);
            dfs(v, cost + c);
            path.pop_back();
        });
    };
    dfs(s, ExactCost::zero());
    return best;
}

std::vector<Cell> random_region(const GridMap& map, std::mt19937_64& rng, std::size_t size) {
    const auto [seed, unused] = random_case(map, rng());
    (void)unused;
    std::vector<Cell> out{seed};
    for (std::size_t guard = 0; out.size() < size && guard < 200; ++guard) {
        const Cell from = out[rng() % out.size()];
        const auto& off = kOffsets[rng() % 4];
        const Cell c{from.x + off[0], from.y + off[1]};
        if (map.free(c) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

}  // namespace

TEST(Oracle, DistancesOnCorridor) {
    const auto map = GridMap::from_rows({".....", ".@@@.", "....."});
    const auto d = truth_distances(map, {{0, 0}});
    EXPECT_EQ(d[map.geometry().index({4, 0})], (ExactCost{4, 0}));
    EXPECT_EQ(d[map.geometry().index({2, 2})], (ExactCost{4, 0}));  // no corner cutting
    EXPECT_TRUE(d[map.geometry().index({2, 1})].is_infinite());
}

TEST(Oracle, RestrictedCostMatchesPathEnumeration) {
    std::mt19937_64 rng(5);
    std::uint64_t pairs = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto map = random_obstacle_map(10, 10, 0.25, rng(), trial % 2 ? Connectivity::Eight : Connectivity::Four);
        const auto belief = full_belief(map);
        const auto cells = random_region(map, rng, 1 + rng() % 8);
        const Region d(belief, cells);
        for (auto s : d.cells())
            for (auto t : d.border()) {
                EXPECT_EQ(restricted_cost(d, s, t, belief), brute_restricted(belief, d.cells(), s, t));
                ++pairs;
            }
    }
    EXPECT_GT(pairs, 1000u);
}

TEST(Oracle, RegionValidation) {
    const auto map = GridMap::from_rows({"...", "@@@", "..."});
    const auto belief = full_belief(map);
    EXPECT_THROW(Region(belief, {}), std::invalid_argument);
    EXPECT_THROW(Region(belief, {{0, 1}}), std::invalid_argument);
    EXPECT_THROW(Region(belief, {{0, 0}, {0, 2}}), std::invalid_argument);
    const Region r(belief, {{0, 0}, {1, 0}});
    EXPECT_EQ(r.border(), (std::vector<Cell>{{2, 0}}));
    EXPECT_THROW(restricted_cost(r, {0, 0}, {1, 0}, belief), std::invalid_argument);
}

TEST(Oracle, CostSensitiveRegionStrictlyContainsIshidaRegion) {
    // Goal at the left end. Cell 4 is high, but reaching the only exit from
    // it costs more than its h, so it belongs to a cost-sensitive depression
    // while every h-level that would take it in also takes in the goal.
    const GridMap map(5, 1, Connectivity::Four);
    const auto belief = full_belief(map);
    const std::vector<std::int64_t> values{0, 5, 2, 4, 7};
    const HValues h = [&](Cell c) { return ExactCost{values[static_cast<std::size_t>(c.x)], 0}; };
    const GoalSet goals(map.geometry(), {{0, 0}});

    auto ishida = grow_ishida_depression(belief, h, {2, 0}, goals);
    std::sort(ishida.begin(), ishida.end());
    EXPECT_EQ(ishida, (std::vector<Cell>{{2, 0}, {3, 0}}));
    const auto sensitive = grow_cost_sensitive_depression(belief, h, ishida, goals);
    EXPECT_EQ(sensitive, (std::vector<Cell>{{2, 0}, {3, 0}, {4, 0}}));
    EXPECT_EQ(grow_cost_sensitive_depression(belief, h, {{2, 0}}, goals), sensitive);

    EXPECT_TRUE(is_ishida_depression(Region(belief, ishida), h));
    EXPECT_TRUE(is_cost_sensitive_depression(Region(belief, ishida), h, belief));
    EXPECT_TRUE(is_cost_sensitive_depression(Region(belief, sensitive), h, belief));
    EXPECT_FALSE(is_ishida_depression(Region(belief, sensitive), h));
    EXPECT_FALSE(is_cost_sensitive_depression(Region(belief, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}), h, belief));
    EXPECT_THROW(grow_cost_sensitive_depression(belief, h, {{1, 0}}, goals), std::invalid_argument);
}

TEST(Oracle, IshidaRegionsAreCostSensitive) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto map = random_obstacle_map(9, 9, 0.2, rng());
        const auto belief = full_belief(map);
        const auto [seed, goal] = random_case(map, rng());
        const GoalSet goals(map.geometry(), {goal});
        std::vector<std::int64_t> values(map.geometry().size());
        for (auto& v : values) v = static_cast<std::int64_t>(rng() % 10);
        values[map.geometry().index(goal)] = 0;
        const HValues h = [&](Cell c) { return ExactCost{values[map.geometry().index(c)], 0}; };
        const auto region = grow_ishida_depression(belief, h, seed, goals);
        if (region.empty()) continue;
        const Region d(belief, region);
        EXPECT_TRUE(is_ishida_depression(d, h));
        EXPECT_TRUE(is_cost_sensitive_depression(d, h, belief));
    }
}

TEST(Oracle, TrapPocketIsADepressionOfManhattan) {
    const auto t = build_trap_instance(8);
    const auto belief = full_belief(t.map);
    const HValues h = [&](Cell c) { return manhattan(c, t.goal); };
    EXPECT_TRUE(is_cost_sensitive_depression(Region(belief, t.depression), h, belief));
}

TEST(Oracle, InconsistencyIsFound) {
    const GridMap map(4, 1, Connectivity::Four);
    const auto belief = full_belief(map);
    const HValues good = [](Cell c) { return ExactCost{3 - c.x, 0}; };
    EXPECT_FALSE(find_inconsistency(belief, good, {{3, 0}}).has_value());
    const HValues jump = [](Cell c) { return ExactCost{c.x == 0 ? 5 : 3 - c.x, 0}; };
    EXPECT_TRUE(find_inconsistency(belief, jump, {{3, 0}}).has_value());
    const HValues nonzero_goal = [](Cell) { return ExactCost{1, 0}; };
    EXPECT_TRUE(find_inconsistency(belief, nonzero_goal, {{3, 0}}).has_value());
}

TEST(Oracle, LearningOracleAgreesWithSweep) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto map = random_obstacle_map(18, 18, 0.3, seed + 40);
        const auto [s, g] = random_case(map, seed);
        BeliefMap belief(map);
        sense(map, belief, s);
        const GoalSet goals(map.geometry(), {g});
        HeuristicStore store(map.geometry(), distance_heuristic(map.geometry(), {g}));
        LookaheadWorkspace ws(map.geometry());
        bounded_astar(belief, s, goals, store, 1 + seed, ws);
        if (ws.frontier().empty()) continue;
        const auto pre = store.snapshot();
        const HValues pre_h = [&](Cell c) { return pre[map.geometry().index(c)]; };
        const auto expected = lss_learning_oracle(ws, belief, pre_h);
        update_lss(ws, belief, store);
        for (const auto& [id, v] : expected) EXPECT_EQ(store.h(map.geometry().cell(id)), v);
    }
}

TEST(Oracle, MarkedRegionCheckHasTeeth) {
    const auto t = build_trap_instance(8);
    BeliefMap belief(t.map);
    sense(t.map, belief, t.start);
    const GoalSet goals(t.map.geometry(), {t.goal});
    HeuristicStore store(t.map.geometry(), distance_heuristic(t.map.geometry(), {t.goal}));
    LookaheadWorkspace ws(t.map.geometry());
    bounded_astar(belief, t.start, goals, store, 4, ws, t.tie);
    const auto pre = store.snapshot();
    update_lss_marking(ws, belief, store, MarkingScope::ClosedOnly);
    const auto post = store.snapshot();
    const auto& geo = t.map.geometry();
    const HValues pre_h = [&](Cell c) { return pre[geo.index(c)]; };
    const HValues post_h = [&](Cell c) { return post[geo.index(c)]; };
    std::vector<Cell> marked;
    for (auto c : ws.closed())
        if (store.updated(c)) marked.push_back(c);
    ASSERT_FALSE(marked.empty());
    std::string why;
    EXPECT_TRUE(verify_marked_depression(pre_h, post_h, ws, belief, marked, &why)) << why;

    // A marked state whose h did not rise is rejected.
    EXPECT_FALSE(verify_marked_depression(pre_h, pre_h, ws, belief, marked, &why));
    // Raising a closed state the pre-episode heuristic could escape from
    // cheaply breaks the depression property.
    const HValues steep = [&](Cell c) { return c == marked.front() ? pre_h(c) + ExactCost{50, 0} : pre_h(c); };
    const HValues steep_post = [&](Cell c) { return max(post_h(c), steep(c) + ExactCost{1, 0}); };
    EXPECT_FALSE(verify_marked_depression(steep, steep_post, ws, belief, marked, &why));
}
