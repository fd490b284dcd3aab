#pragma once

#include <optional>
#include <stdexcept>

#include "rtsearch/heuristic_store.hpp"
#include "rtsearch/lookahead.hpp"

namespace rtsearch {

namespace detail {

inline void require_open(const LookaheadWorkspace& ws, const char* who) {
    if (ws.open().empty()) throw std::logic_error(std::string(who) + ": Open is empty");
}

}  // namespace detail

/// Min-f Open state under the workspace tie-break. Open is not consumed.
inline Cell select_best(const LookaheadWorkspace& ws, const HeuristicStore&) {
    detail::require_open(ws, "select_best");
    return ws.geometry().cell(ws.open().top());
}

/// Min-f Open state among those not marked as lying in a depression; the
/// overall min-f state if every Open state is marked. Pops Open until an
/// unmarked state surfaces.
inline Cell select_best_unmarked(LookaheadWorkspace& ws, const HeuristicStore& store) {
    detail::require_open(ws, "select_best_unmarked");
    const auto& geo = ws.geometry();
    auto& open = ws.open();
    const Cell first = geo.cell(open.top());
    if (!store.updated(first)) return first;
    open.pop();
    while (!open.empty()) {
        const Cell s = geo.cell(open.pop());
        if (!store.updated(s)) return s;
    }
    return first;
}

/// Pops Open in f order and returns the first state reaching the smallest
/// h - h0 seen; stops early once a state with zero change is found.
inline Cell select_least_delta(LookaheadWorkspace& ws, const HeuristicStore& store) {
    detail::require_open(ws, "select_least_delta");
    const auto& geo = ws.geometry();
    auto& open = ws.open();
    std::optional<Cell> chosen;
    ExactCost delta_min = ExactCost::infinity();
    while (!open.empty() && !(delta_min == ExactCost::zero())) {
        const Cell s = geo.cell(open.pop());
        const ExactCost d = store.delta(s);
        if (!chosen || d < delta_min) {
            delta_min = d;
            chosen = s;
        }
    }
    return *chosen;
}

}  // namespace rtsearch
