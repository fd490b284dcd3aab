#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "rtsearch/exact_cost.hpp"

using rtsearch::ExactCost;

TEST(ExactCost, ArithmeticAndRendering) {
    const ExactCost a{2, 1};
    EXPECT_EQ(a + ExactCost::unit(), (ExactCost{3, 1}));
    EXPECT_EQ(a - ExactCost::sqrt2(), (ExactCost{2, 0}));
    EXPECT_EQ(a.to_string(), "2+1r2");
    EXPECT_EQ(ExactCost::infinity().to_string(), "inf");
    EXPECT_NEAR(a.to_double(), 2 + std::sqrt(2.0), 1e-12);
}

TEST(ExactCost, InfinityAbsorbsAndDominates) {
    const auto inf = ExactCost::infinity();
    EXPECT_TRUE((inf + ExactCost{5, 5}).is_infinite());
    EXPECT_TRUE((ExactCost{5, 5} + inf).is_infinite());
    EXPECT_TRUE((inf - ExactCost{5, 5}).is_infinite());
    EXPECT_THROW((ExactCost{1, 0} - inf), std::domain_error);
    EXPECT_GT(inf, (ExactCost{1'000'000'000, 1'000'000'000}));
    EXPECT_EQ(inf, ExactCost::infinity());
}

TEST(ExactCost, MixedSignComponents) {
    // -1 + 2*sqrt(2) ~ 1.83 sits between 1 + 0.5... and 2
    const ExactCost v{-1, 2};
    EXPECT_GT(v, ExactCost::unit());
    EXPECT_LT(v, (ExactCost{2, 0}));
    EXPECT_EQ(v.sign(), 1);
    EXPECT_EQ((ExactCost{3, -3}).sign(), -1);  // 3 - 4.24
    EXPECT_EQ((ExactCost{-3, 3}).sign(), 1);
    EXPECT_EQ(ExactCost::zero().sign(), 0);
}

TEST(ExactCost, OrderAgreesWithFloatingPointOnRandomPairs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> comp(-2000, 2000);
    int disagreements = 0;
    for (int i = 0; i < 100'000; ++i) {
        const ExactCost a{comp(rng), comp(rng)}, b{comp(rng), comp(rng)};
        const double da = a.to_double(), db = b.to_double();
        if (std::abs(da - db) < 1e-9) continue;  // too close for doubles to judge
        if ((a < b) != (da < db)) ++disagreements;
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(ExactCost, EqualityIsCanonical) {
    // Equal magnitudes have equal encodings: a + b r2 == c + d r2 only if
    // a == c and b == d. Check that no two distinct encodings in a box
    // compare equal.
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (std::int64_t a = -30; a <= 30; ++a)
        for (std::int64_t b = -30; b <= 30; ++b)
            for (std::int64_t c = -30; c <= 30; c += 7)
                for (std::int64_t d = -30; d <= 30; d += 5)
                    if (a != c || b != d) {
                        EXPECT_NE((ExactCost{a, b} <=> ExactCost{c, d}), std::strong_ordering::equal);
                    }
}

TEST(ExactCost, TotalOrderIsTransitive) {
    std::vector<ExactCost> values;
    for (std::int64_t a = -6; a <= 6; ++a)
        for (std::int64_t b = -6; b <= 6; ++b) values.emplace_back(a, b);
    values.push_back(ExactCost::infinity());
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) EXPECT_LT(values[i - 1].to_double(), values[i].to_double());
}
