#include <gtest/gtest.h>

#include "rtsearch/instances.hpp"
#include "rtsearch/oracle.hpp"
#include "rtsearch/search.hpp"

using namespace rtsearch;

TEST(Algorithm, NamesAndPairings) {
    EXPECT_EQ(AlgorithmSpec::all().size(), 6u);
    for (const auto& spec : AlgorithmSpec::all()) {
        EXPECT_EQ(AlgorithmSpec::from_name(spec.name()), spec);
        EXPECT_EQ(AlgorithmSpec::from_name(spec.cli_name()), spec);
    }
    EXPECT_EQ(AlgorithmSpec::from_name("daRTAA*"), AlgorithmSpec::dartaa());
    EXPECT_THROW(AlgorithmSpec::from_name("lrta"), std::invalid_argument);
    EXPECT_THROW(AlgorithmSpec::make(UpdateRule::LssMarking, SelectRule::BestF), std::invalid_argument);
    EXPECT_EQ(AlgorithmSpec::make(UpdateRule::Rtaa, SelectRule::LeastDelta), AlgorithmSpec::dartaa());
    EXPECT_TRUE(AlgorithmSpec::alss_lrta().marks());
    EXPECT_FALSE(AlgorithmSpec::dalss_lrta().marks());
    EXPECT_TRUE(AlgorithmSpec::dalss_lrta().lss_learning());
    EXPECT_FALSE(AlgorithmSpec::artaa().lss_learning());
}

TEST(Search, TrajectoryIsAWalkWhoseCostIsReported) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto map = random_obstacle_map(25, 25, 0.25, seed, seed % 2 ? Connectivity::Four : Connectivity::Eight);
        const auto [s, g] = random_case(map, seed);
        if (!connected(map, s, g)) continue;
        const auto opt = truth_distances(map, {g})[map.geometry().index(s)];
        for (const auto& spec : AlgorithmSpec::all()) {
            const auto r = solve(map, s, g, spec, 1 + seed % 9);
            ASSERT_EQ(r.outcome, Outcome::Solved) << spec.name() << " seed " << seed;
            ASSERT_EQ(r.trajectory.front(), s);
            ASSERT_EQ(r.trajectory.back(), g);
            ExactCost walked;
            BeliefMap full(map);
            for (std::uint32_t i = 0; i < map.geometry().size(); ++i)
                if (!map.free(map.geometry().cell(i))) full.mark_blocked(map.geometry().cell(i));
            for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
                const auto c = full.arc_cost(r.trajectory[i - 1], r.trajectory[i]);
                ASSERT_FALSE(c.is_infinite());
                walked += c;
            }
            EXPECT_EQ(walked, r.cost);
            EXPECT_GE(r.cost, opt);
            EXPECT_EQ(r.episode_stats.size(), r.episodes);
            std::uint64_t moves = 0, expansions = 0;
            for (const auto& e : r.episode_stats) {
                EXPECT_GE(e.moves, 1u);
                EXPECT_LE(e.expansions, 1 + seed % 9);
                moves += e.moves;
                expansions += e.expansions;
            }
            EXPECT_EQ(moves + 1, r.trajectory.size());
            EXPECT_EQ(expansions, r.expansions);
        }
    }
}

TEST(Search, StartAtGoal) {
    const GridMap map(4, 4);
    const auto r = solve(map, {1, 1}, {1, 1}, AlgorithmSpec::rtaa(), 3);
    EXPECT_TRUE(r.solved());
    EXPECT_EQ(r.episodes, 0u);
    EXPECT_EQ(r.cost, ExactCost::zero());
    EXPECT_EQ(r.expansions_per_episode(), 0.0);
}

TEST(Search, DisconnectedGoalIsNoSolution) {
    const auto map = GridMap::from_rows({"..@..", "..@..", "..@.."});
    for (const auto& spec : AlgorithmSpec::all()) {
        const auto r = solve(map, {0, 1}, {4, 1}, spec, map.geometry().size());
        EXPECT_EQ(r.outcome, Outcome::NoSolution) << spec.name();
        // a small lookahead never sees the whole pocket and keeps learning
        SearchOptions opt;
        opt.max_episodes = 500;
        EXPECT_EQ(solve(map, {0, 1}, {4, 1}, spec, 2, opt).outcome, Outcome::EpisodeLimit) << spec.name();
    }
}

TEST(Search, EpisodeLimit) {
    SearchOptions opt;
    opt.max_episodes = 2;
    const auto r = solve(GridMap(30, 1), {0, 0}, {29, 0}, AlgorithmSpec::lss_lrta(), 1, opt);
    EXPECT_EQ(r.outcome, Outcome::EpisodeLimit);
    EXPECT_EQ(r.episodes, 2u);
    EXPECT_STREQ(to_string(r.outcome), "episode-limit");
}

TEST(Search, BadArguments) {
    const auto map = GridMap::from_rows({"...", ".@.", "..."});
    EXPECT_THROW(solve(map, {0, 0}, {1, 1}, AlgorithmSpec::rtaa(), 1), std::invalid_argument);
    EXPECT_THROW(solve(map, {1, 1}, {0, 0}, AlgorithmSpec::rtaa(), 1), std::invalid_argument);
    EXPECT_THROW(solve(map, {0, 0}, {2, 2}, AlgorithmSpec::rtaa(), 0), std::invalid_argument);
    EXPECT_THROW(run_search(map, {0, 0}, {}, AlgorithmSpec::rtaa(), 1), std::invalid_argument);
}

TEST(Search, MultipleGoals) {
    const GridMap map(10, 1, Connectivity::Four);
    const auto r = run_search(map, {4, 0}, {{0, 0}, {6, 0}}, AlgorithmSpec::lss_lrta(), 4);
    EXPECT_TRUE(r.solved());
    EXPECT_EQ(r.trajectory.back(), (Cell{6, 0}));
    EXPECT_EQ(r.cost, (ExactCost{2, 0}));
}

TEST(Search, KnownOpenGridIsOptimalWithLargeLookahead) {
    const GridMap map(12, 9);
    const auto r = solve(map, {0, 0}, {11, 8}, AlgorithmSpec::lss_lrta(), 1000);
    EXPECT_EQ(r.cost, octile({0, 0}, {11, 8}));
    EXPECT_EQ(r.episodes, 1u);
}

TEST(Search, HooksSeeEveryEpisode) {
    const auto map = random_obstacle_map(20, 20, 0.3, 4);
    const auto [s, g] = random_case(map, 11);
    std::uint64_t looks = 0, befores = 0, afters = 0;
    SearchOptions opt;
    opt.hooks.after_lookahead = [&](const EpisodeView& v) {
        EXPECT_EQ(v.episode, looks);
        EXPECT_FALSE(v.next.has_value());
        ++looks;
    };
    opt.hooks.before_update = [&](const EpisodeView& v) {
        EXPECT_TRUE(v.next.has_value());
        ++befores;
    };
    opt.hooks.after_update = [&](const EpisodeView&) { ++afters; };
    const auto r = solve(map, s, g, AlgorithmSpec::dalss_lrta(), 3, opt);
    EXPECT_EQ(looks, r.episodes);
    EXPECT_EQ(befores, r.episodes);
    EXPECT_EQ(afters, r.episodes);
}

TEST(Search, RunsAreDeterministic) {
    const auto map = random_obstacle_map(30, 30, 0.25, 12);
    const auto [s, g] = random_case(map, 3);
    for (const auto& spec : AlgorithmSpec::all()) {
        const auto a = solve(map, s, g, spec, 4);
        const auto b = solve(map, s, g, spec, 4);
        EXPECT_EQ(a.trajectory, b.trajectory);
        EXPECT_EQ(a.percolations, b.percolations);
        EXPECT_EQ(a.final_h, b.final_h);
    }
}

TEST(Search, LearnedHeuristicNeverDrops) {
    const auto map = random_obstacle_map(24, 24, 0.3, 40);
    const auto [s, g] = random_case(map, 40);
    const auto h0 = distance_heuristic(map.geometry(), {g});
    for (const auto& spec : AlgorithmSpec::all()) {
        const auto r = solve(map, s, g, spec, 2);
        for (std::uint32_t i = 0; i < map.geometry().size(); ++i) EXPECT_GE(r.final_h[i], h0(map.geometry().cell(i)));
    }
}

TEST(Search, RepeatedTrialsConvergeToOptimal) {
    const auto map = random_obstacle_map(15, 15, 0.25, 7);
    const auto [s, g] = random_case(map, 8);
    ASSERT_TRUE(connected(map, s, g));
    const auto opt = truth_distances(map, {g})[map.geometry().index(s)];
    for (const auto& spec : AlgorithmSpec::all()) {
        const auto seq = run_trials(map, s, {g}, spec, 1, 2000);
        ASSERT_TRUE(seq.converged) << spec.name();
        EXPECT_EQ(seq.trials.back().cost, opt) << spec.name();
        EXPECT_LE(seq.trials.back().cost, seq.trials.front().cost);
    }
}
