#include <gtest/gtest.h>

#include "rtsearch/search.hpp"
#include "rtsearch/trap.hpp"
#include "rtsearch/verification.hpp"

using namespace rtsearch;

TEST(Trap, Layout) {
    const auto t = build_trap_instance(7);
    EXPECT_EQ(t.map, GridMap::from_rows({"@@@@...", ".....@.", ".....@."}, Connectivity::Four));
    EXPECT_EQ(t.start, (Cell{4, 2}));
    EXPECT_EQ(t.goal, (Cell{6, 2}));
    EXPECT_EQ(t.depression.size(), 10u);
    EXPECT_THROW(build_trap_instance(4), std::invalid_argument);
}

TEST(Trap, VisitsAndCost) {
    for (std::int32_t n = 5; n <= 14; ++n) {
        const auto t = build_trap_instance(n);
        const auto m = n - 2;
        SearchOptions opt;
        opt.tie = t.tie;
        const auto r = run_search(t.map, t.start, {t.goal}, AlgorithmSpec::lss_lrta(), 1, opt);
        ASSERT_TRUE(r.solved());
        const auto visits = visit_counts(r.trajectory);
        for (auto c : t.depression) {
            const bool wall = std::find(t.wall_adjacent.begin(), t.wall_adjacent.end(), c) != t.wall_adjacent.end();
            EXPECT_EQ(visits.at(c), wall ? 2u : 3u) << "n=" << n << " cell " << to_string(c);
        }
        EXPECT_EQ(r.cost, (ExactCost{6 * m + 2, 0})) << "n=" << n;
    }
}

TEST(Trap, SuitePasses) {
    const auto report = trap_suite(5, 14);
    EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(Trap, LinearFit) {
    const auto fit = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(fit[0], 1.0, 1e-12);
    EXPECT_NEAR(fit[1], 2.0, 1e-12);
    EXPECT_NEAR(fit[2], 1.0, 1e-12);
}

TEST(Corridor, PlainVariantsStayOutOfTheLure) {
    for (std::int32_t n = 6; n <= 12; ++n) {
        const auto c = build_corridor_instance(n, CorridorTies::UpDownRightLeft);
        SearchOptions opt;
        opt.tie = c.tie;
        for (const auto& spec : AlgorithmSpec::all()) {
            const auto r = run_search(c.map, c.start, {c.goal}, spec, 1, opt);
            ASSERT_TRUE(r.solved());
            const auto visits = visit_counts(r.trajectory);
            std::size_t lured = 0;
            for (auto cell : c.right_region) lured += visits.count(cell);
            if (spec == AlgorithmSpec::lss_lrta() || spec == AlgorithmSpec::rtaa()) {
                EXPECT_EQ(lured, 0u) << spec.name() << " n=" << n;
                EXPECT_EQ(r.cost, (ExactCost{12, 0}));
            } else {
                EXPECT_EQ(lured, c.right_region.size()) << spec.name() << " n=" << n;
            }
        }
    }
}
