#include <gtest/gtest.h>

#include <map>

#include "rtsearch/instances.hpp"
#include "rtsearch/learning.hpp"
#include "rtsearch/oracle.hpp"
#include "rtsearch/trap.hpp"

using namespace rtsearch;

namespace {

struct Fixture {
    GridMap map;
    BeliefMap belief;
    GoalSet goals;
    HeuristicStore store;
    LookaheadWorkspace ws;
    std::vector<Cell> goal_list;

    Fixture(GridMap m, Cell goal)
        : map(std::move(m)),
          belief(map),
          goals(map.geometry(), {goal}),
          store(map.geometry(), distance_heuristic(map.geometry(), {goal})),
          ws(map.geometry()),
          goal_list{goal} {}

    void look(Cell s, std::uint64_t k, TieBreak tie = {}) {
        sense(map, belief, s);
        bounded_astar(belief, s, goals, store, k, ws, std::move(tie));
    }
};

// Value iteration to the fixed point h(s) = min over neighbors t of c(s,t) + h(t),
// with frontier values held fixed. Closed values start at infinity.
std::map<Cell, ExactCost> fixed_point(const LookaheadWorkspace& ws, const BeliefMap& belief, const HeuristicStore& store) {
    std::map<Cell, ExactCost> h;
    for (auto c : ws.closed()) h[c] = ExactCost::infinity();
    auto value = [&](Cell c) { return h.count(c) ? h[c] : store.h(c); };
    for (bool changed = true; changed;) {
        changed = false;
        for (auto s : ws.closed()) {
            ExactCost best = ExactCost::infinity();
            belief.for_each_successor(s, [&](Cell t, ExactCost c) {
                const auto v = value(t);
                if (!v.is_infinite()) best = min(best, c + v);
            });
            if (best < h[s]) {
                h[s] = best;
                changed = true;
            }
        }
    }
    return h;
}

}  // namespace

TEST(Learning, TrapFirstEpisode) {
    const auto t = build_trap_instance(5);
    Fixture lss(t.map, t.goal);
    lss.look(t.start, 1, t.tie);
    EXPECT_EQ(lss.store.h(t.start), (ExactCost{2, 0}));
    update_lss_marking(lss.ws, lss.belief, lss.store);
    EXPECT_EQ(lss.store.h(t.start), (ExactCost{4, 0}));
    EXPECT_TRUE(lss.store.updated(t.start));

    Fixture rtaa(t.map, t.goal);
    rtaa.look(t.start, 1, t.tie);
    update_rtaa_marking(rtaa.ws, rtaa.store);
    EXPECT_EQ(rtaa.store.h(t.start), (ExactCost{4, 0}));
    EXPECT_TRUE(rtaa.store.updated(t.start));
}

TEST(Learning, NoMarksWithoutMarkingRule) {
    const auto t = build_trap_instance(6);
    Fixture f(t.map, t.goal);
    f.look(t.start, 3, t.tie);
    update_lss(f.ws, f.belief, f.store);
    for (auto c : f.ws.closed()) EXPECT_FALSE(f.store.updated(c));
}

TEST(Learning, EmptyFrontierThrows) {
    Fixture f(GridMap(3, 3), {0, 0});
    for (auto c : std::vector<Cell>{{0, 1}, {1, 0}, {2, 1}, {1, 2}, {0, 0}, {2, 0}, {0, 2}, {2, 2}}) f.belief.mark_blocked(c);
    bounded_astar(f.belief, {1, 1}, f.goals, f.store, 4, f.ws);
    EXPECT_THROW(update_lss(f.ws, f.belief, f.store), std::logic_error);
    EXPECT_THROW(update_rtaa(f.ws, f.store), std::logic_error);
}

TEST(Learning, LssMatchesValueIteration) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto map = random_obstacle_map(20, 20, 0.3, seed, seed % 3 ? Connectivity::Eight : Connectivity::Four);
        const auto [s, g] = random_case(map, seed);
        Fixture f(map, g);
        f.look(s, 1 + seed % 25);
        if (f.ws.frontier().empty()) continue;
        const auto expected = fixed_point(f.ws, f.belief, f.store);
        const auto frontier_before = f.ws.frontier();
        std::vector<ExactCost> fh;
        for (auto b : frontier_before) fh.push_back(f.store.h(b));
        update_lss(f.ws, f.belief, f.store);
        for (const auto& [c, v] : expected) EXPECT_EQ(f.store.h(c), v) << "seed " << seed << " cell " << to_string(c);
        for (std::size_t i = 0; i < frontier_before.size(); ++i) EXPECT_EQ(f.store.h(frontier_before[i]), fh[i]);
    }
}

TEST(Learning, LssDominatesRtaaAndBothStayConsistent) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto map = random_obstacle_map(20, 20, 0.3, seed + 500);
        const auto [s, g] = random_case(map, seed);
        Fixture a(map, g);
        Fixture b(map, g);
        a.look(s, 1 + seed % 30);
        b.look(s, 1 + seed % 30);
        if (a.ws.frontier().empty()) continue;
        std::map<Cell, ExactCost> before;
        for (auto c : a.ws.closed()) before[c] = a.store.h(c);
        update_lss(a.ws, a.belief, a.store);
        update_rtaa(b.ws, b.store);
        for (auto c : a.ws.closed()) {
            EXPECT_GE(b.store.h(c), before[c]);
            EXPECT_GE(a.store.h(c), b.store.h(c));
        }
        const auto ha = [&](Cell c) { return a.store.h(c); };
        const auto hb = [&](Cell c) { return b.store.h(c); };
        EXPECT_FALSE(find_inconsistency(a.belief, ha, a.goal_list).has_value());
        EXPECT_FALSE(find_inconsistency(b.belief, hb, b.goal_list).has_value());
    }
}

TEST(Learning, RtaaRuleIsFStarMinusG) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto map = random_obstacle_map(16, 16, 0.2, seed + 900);
        const auto [s, g] = random_case(map, seed);
        Fixture f(map, g);
        f.look(s, 8);
        if (f.ws.frontier().empty()) continue;
        // f* is the minimum f over the whole frontier
        ExactCost fstar = ExactCost::infinity();
        for (auto c : f.ws.frontier()) fstar = min(fstar, f.ws.g(c) + f.store.h(c));
        update_rtaa(f.ws, f.store);
        for (auto c : f.ws.closed()) EXPECT_EQ(f.store.h(c) + f.ws.g(c), fstar);
    }
}

TEST(Learning, MarkingFlagsExactlyRaisedClosedStates) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto map = random_obstacle_map(20, 20, 0.35, seed + 77);
        const auto [s, g] = random_case(map, seed);
        for (auto scope : {MarkingScope::Extracted, MarkingScope::ClosedOnly}) {
            Fixture f(map, g);
            f.look(s, 1 + seed % 16);
            if (f.ws.frontier().empty()) continue;
            std::map<Cell, ExactCost> before;
            for (auto c : f.ws.closed()) before[c] = f.store.h(c);
            update_lss_marking(f.ws, f.belief, f.store, scope);
            for (auto c : f.ws.closed()) EXPECT_EQ(f.store.updated(c), f.store.h(c) > before[c]);
            if (scope == MarkingScope::ClosedOnly) {
                for (auto c : f.ws.frontier()) EXPECT_FALSE(f.store.updated(c));
            }
        }
    }
}

TEST(Learning, MarksClearOnNewTrial) {
    const auto t = build_trap_instance(5);
    Fixture f(t.map, t.goal);
    f.look(t.start, 1, t.tie);
    update_rtaa_marking(f.ws, f.store);
    ASSERT_TRUE(f.store.updated(t.start));
    f.store.begin_trial();
    EXPECT_FALSE(f.store.updated(t.start));
    EXPECT_EQ(f.store.h(t.start), (ExactCost{4, 0}));
    EXPECT_EQ(f.store.delta(t.start), ExactCost::zero());
}
