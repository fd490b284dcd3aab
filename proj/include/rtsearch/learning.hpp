#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rtsearch/heuristic_store.hpp"
#include "rtsearch/lookahead.hpp"

namespace rtsearch {

/// Which states the marking variants of the Dijkstra sweep may flag.
enum class MarkingScope : std::uint8_t {
    Extracted,   // any state extracted from the sweep queue, frontier included
    ClosedOnly,  // only states of the local search space interior
};

namespace detail {

inline void require_frontier(const LookaheadWorkspace& ws, const char* who) {
    if (ws.frontier().empty()) throw std::logic_error(std::string(who) + ": Open is empty");
}

/// Dijkstra sweep over Closed seeded with the frontier: afterwards every
/// closed state s holds min over frontier states b of k(s, b) + h(b), where
/// k only passes through Closed.
inline void lss_sweep(LookaheadWorkspace& ws, const BeliefMap& belief, HeuristicStore& store, bool marking,
                      MarkingScope scope) {
    const auto& geo = ws.geometry();
    auto& queue = ws.sweep_queue();
    queue.clear();
    queue.reset_percolations();

    // Tentative h of states still waiting in Closed.
    auto& scratch = ws.sweep_scratch();
    scratch.begin();
    for (auto c : ws.closed()) scratch.set_pending(geo.index(c), ExactCost::infinity());
    std::size_t remaining = ws.closed().size();
    std::vector<std::pair<Cell, ExactCost>> finished;
    finished.reserve(remaining);

    for (auto b : ws.frontier()) queue.push(geo.index(b), {store.h(b), ws.rank(b)});

    while (remaining > 0 && !queue.empty()) {
        const ExactCost hs = queue.top_key().h;
        const auto id = queue.pop();
        const Cell s = geo.cell(id);
        const bool was_closed = scratch.pending(id);
        if (marking && (was_closed || scope == MarkingScope::Extracted) && hs > store.h0(s)) store.mark_updated(s);
        if (was_closed) {
            scratch.settle(id);
            --remaining;
            finished.emplace_back(s, hs);
        }
        belief.for_each_successor(s, [&](Cell t, ExactCost c) {
            const auto tid = geo.index(t);
            if (!scratch.pending(tid)) return;
            const ExactCost candidate = c + hs;
            if (candidate < scratch.value(tid)) {
                scratch.set_pending(tid, candidate);
                if (queue.contains(tid)) queue.erase(tid);
                queue.push(tid, {candidate, ws.rank(t)});
            }
        });
    }
    ws.add_percolations(queue.percolations());
    queue.clear();
    for (const auto& [s, value] : finished) store.set_h(s, value);
}

inline void rtaa_rule(LookaheadWorkspace& ws, HeuristicStore& store, bool marking) {
    const Cell best = *ws.best();
    const ExactCost f = ws.g(best) + store.h(best);
    for (auto s : ws.closed()) {
        const ExactCost value = f - ws.g(s);
        const ExactCost h0 = store.h0(s);
        store.set_h(s, value);
        if (marking && value > h0) store.mark_updated(s);
    }
}

}  // namespace detail

/// LSS-LRTA* learning: raises h over Closed to the largest values that stay
/// consistent with the frontier. Frontier h-values are unchanged.
inline void update_lss(LookaheadWorkspace& ws, const BeliefMap& belief, HeuristicStore& store) {
    detail::require_frontier(ws, "update_lss");
    detail::lss_sweep(ws, belief, store, false, MarkingScope::Extracted);
}

/// update_lss, additionally flagging every swept state whose h now exceeds
/// h0. Marks are never cleared within a trial.
inline void update_lss_marking(LookaheadWorkspace& ws, const BeliefMap& belief, HeuristicStore& store,
                               MarkingScope scope = MarkingScope::Extracted) {
    detail::require_frontier(ws, "update_lss_marking");
    detail::lss_sweep(ws, belief, store, true, scope);
}

/// RTAA* learning: h(s) = f* - g(s) for every closed s, where f* is the
/// smallest f in Open.
inline void update_rtaa(LookaheadWorkspace& ws, HeuristicStore& store) {
    detail::require_frontier(ws, "update_rtaa");
    detail::rtaa_rule(ws, store, false);
}

inline void update_rtaa_marking(LookaheadWorkspace& ws, HeuristicStore& store) {
    detail::require_frontier(ws, "update_rtaa_marking");
    detail::rtaa_rule(ws, store, true);
}

}  // namespace rtsearch
