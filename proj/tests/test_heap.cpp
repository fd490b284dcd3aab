#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "rtsearch/binary_heap.hpp"

using Heap = rtsearch::IndexedBinaryHeap<int, std::less<>>;

TEST(Heap, PopsInKeyOrder) {
    Heap heap(100);
    std::mt19937 rng(2);
    std::vector<int> keys(100);
    for (int i = 0; i < 100; ++i) {
        keys[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 1000);
        heap.push(static_cast<std::uint32_t>(i), keys[static_cast<std::size_t>(i)]);
    }
    std::vector<int> popped;
    while (!heap.empty()) popped.push_back(keys[heap.pop()]);
    EXPECT_TRUE(std::is_sorted(popped.begin(), popped.end()));
}

TEST(Heap, EraseAndContains) {
    Heap heap(10);
    for (std::uint32_t i = 0; i < 10; ++i) heap.push(i, static_cast<int>(10 - i));
    heap.erase(9);
    heap.erase(4);
    EXPECT_FALSE(heap.contains(9));
    EXPECT_TRUE(heap.contains(3));
    EXPECT_EQ(heap.size(), 8u);
    EXPECT_EQ(heap.top(), 8u);
    heap.push(9, 0);
    EXPECT_EQ(heap.top(), 9u);
    heap.clear();
    EXPECT_TRUE(heap.empty());
    EXPECT_FALSE(heap.contains(9));
}

TEST(Heap, PercolationCountsSingleLevelMoves) {
    Heap heap(8);
    heap.push(0, 5);
    EXPECT_EQ(heap.percolations(), 0u);
    heap.push(1, 4);  // moves above the root: one level
    EXPECT_EQ(heap.percolations(), 1u);
    heap.push(2, 3);  // again one level
    EXPECT_EQ(heap.percolations(), 2u);
    heap.push(3, 1);  // depth 2, climbs two levels
    EXPECT_EQ(heap.percolations(), 4u);
    heap.reset_percolations();
    // pop: last element (key 5) replaces the root and sinks
    heap.pop();
    EXPECT_GE(heap.percolations(), 1u);
}

TEST(Heap, PercolationsAreReproducible) {
    auto run = [] {
        Heap heap(500);
        std::mt19937 rng(9);
        for (std::uint32_t i = 0; i < 500; ++i) heap.push(i, static_cast<int>(rng() % 50));
        for (int i = 0; i < 200; ++i) heap.pop();
        return heap.percolations();
    };
    EXPECT_EQ(run(), run());
}
