#pragma once

// Brute-force reference machinery used to cross-check the search kernel.
// Nothing here shares code with the learning or selection procedures.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rtsearch/grid.hpp"
#include "rtsearch/heuristic_store.hpp"
#include "rtsearch/lookahead.hpp"

namespace rtsearch {

using HValues = std::function<ExactCost(Cell)>;

/// Multi-source Dijkstra. `for_each_arc(s, visit)` enumerates (t, cost)
/// arcs leaving s; with undirected maps the result is the cost to the
/// nearest source.
template <typename ForEachArc>
std::vector<ExactCost> dijkstra(const GridGeometry& geo, const std::vector<Cell>& sources, ForEachArc&& for_each_arc) {
    std::vector<ExactCost> dist(geo.size(), ExactCost::infinity());
    using Item = std::pair<ExactCost, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (auto s : sources) {
        dist[geo.index(s)] = ExactCost::zero();
        queue.push({ExactCost::zero(), geo.index(s)});
    }
    while (!queue.empty()) {
        const auto [d, id] = queue.top();
        queue.pop();
        if (d > dist[id]) continue;
        for_each_arc(geo.cell(id), [&](Cell t, ExactCost c) {
            const ExactCost nd = d + c;
            auto& slot = dist[geo.index(t)];
            if (nd < slot) {
                slot = nd;
                queue.push({nd, geo.index(t)});
            }
        });
    }
    return dist;
}

/// Exact cost-to-go in the true terrain.
inline std::vector<ExactCost> truth_distances(const GridMap& truth, const std::vector<Cell>& goals) {
    return dijkstra(truth.geometry(), goals, [&](Cell s, auto&& visit) {
        for (const auto& arc : successors(truth, s)) visit(arc.to, arc.cost);
    });
}

/// Exact cost-to-go under the agent's current belief.
inline std::vector<ExactCost> belief_distances(const BeliefMap& belief, const std::vector<Cell>& goals) {
    return dijkstra(belief.geometry(), goals, [&](Cell s, auto&& visit) { belief.for_each_successor(s, visit); });
}

/// The belief the agent would hold after sensing every obstacle.
inline BeliefMap revealed_belief(const GridMap& truth) {
    BeliefMap belief(truth);
    for (std::int32_t y = 0; y < truth.height(); ++y)
        for (std::int32_t x = 0; x < truth.width(); ++x)
            if (truth.blocked({x, y})) belief.mark_blocked({x, y});
    return belief;
}

// ---------------------------------------------------------------------------
// Consistency

/// First violation of h(goal) = 0 or h(s) <= c(s, t) + h(t) among arcs
/// leaving the given cells, as a message; nullopt if none.
inline std::optional<std::string> find_inconsistency(const BeliefMap& belief, const HValues& h, const std::vector<Cell>& goals,
                                                     const std::vector<Cell>& cells) {
    for (auto g : goals)
        if (!(h(g) == ExactCost::zero())) return "h" + to_string(g) + " = " + h(g).to_string() + " at a goal";
    for (auto s : cells) {
        if (belief.known_blocked(s)) continue;
        const ExactCost hs = h(s);
        std::optional<std::string> bad;
        belief.for_each_successor(s, [&](Cell t, ExactCost c) {
            if (bad) return;
            const ExactCost bound = c + h(t);
            if (hs > bound)
                bad = "h" + to_string(s) + " = " + hs.to_string() + " > c + h" + to_string(t) + " = " + bound.to_string();
        });
        if (bad) return bad;
    }
    return std::nullopt;
}

/// Exhaustive version over every cell of the map.
inline std::optional<std::string> find_inconsistency(const BeliefMap& belief, const HValues& h, const std::vector<Cell>& goals) {
    std::vector<Cell> all;
    all.reserve(belief.geometry().size());
    for (std::uint32_t i = 0; i < belief.geometry().size(); ++i) all.push_back(belief.geometry().cell(i));
    return find_inconsistency(belief, h, goals, all);
}

// ---------------------------------------------------------------------------
// Regions and depressions

/// Nonempty set of cells connected under the belief's move rule, with its
/// border: cells outside the region reachable by one arc from inside.
class Region {
public:
    Region(const BeliefMap& belief, std::vector<Cell> cells) : geometry_(belief.geometry()), cells_(std::move(cells)) {
        if (cells_.empty()) throw std::invalid_argument("Region: empty");
        std::sort(cells_.begin(), cells_.end());
        cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
        member_.assign(geometry_.size(), 0);
        for (auto c : cells_) {
            if (!geometry_.contains(c) || belief.known_blocked(c)) throw std::invalid_argument("Region: cell " + to_string(c) + " is not free");
            member_[geometry_.index(c)] = 1;
        }
        // connectivity by flood fill from the first cell
        std::vector<std::uint8_t> seen(geometry_.size(), 0);
        std::vector<Cell> stack{cells_.front()};
        seen[geometry_.index(cells_.front())] = 1;
        std::size_t reached = 0;
        std::vector<std::uint8_t> on_border(geometry_.size(), 0);
        while (!stack.empty()) {
            const Cell s = stack.back();
            stack.pop_back();
            ++reached;
            belief.for_each_successor(s, [&](Cell t, ExactCost) {
                const auto i = geometry_.index(t);
                if (!member_[i]) {
                    if (!on_border[i]) {
                        on_border[i] = 1;
                        border_.push_back(t);
                    }
                } else if (!seen[i]) {
                    seen[i] = 1;
                    stack.push_back(t);
                }
            });
        }
        if (reached != cells_.size()) throw std::invalid_argument("Region: cells are not connected");
        std::sort(border_.begin(), border_.end());
    }

    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Cell>& border() const { return border_; }
    bool contains(Cell c) const { return geometry_.contains(c) && member_[geometry_.index(c)] != 0; }
    bool on_border(Cell c) const { return std::binary_search(border_.begin(), border_.end(), c); }
    std::size_t size() const { return cells_.size(); }

private:
    GridGeometry geometry_;
    std::vector<Cell> cells_;
    std::vector<Cell> border_;
    std::vector<std::uint8_t> member_;
};

/// Cheapest cost from s to each border cell along paths whose states before
/// the final one all lie in D. Border cells that cannot be reached this way
/// are absent from the result.
inline std::unordered_map<std::uint32_t, ExactCost> restricted_costs_from(const Region& d, Cell s, const BeliefMap& belief) {
    if (!d.contains(s)) throw std::invalid_argument("restricted_cost: " + to_string(s) + " not in region");
    const auto& geo = belief.geometry();
    std::unordered_map<std::uint32_t, ExactCost> dist{{geo.index(s), ExactCost::zero()}};
    using Item = std::pair<ExactCost, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({ExactCost::zero(), geo.index(s)});
    while (!queue.empty()) {
        const auto [du, id] = queue.top();
        queue.pop();
        const Cell u = geo.cell(id);
        if (du > dist.at(id) || !d.contains(u)) continue;  // a border cell ends the path
        belief.for_each_successor(u, [&](Cell v, ExactCost c) {
            const auto [it, fresh] = dist.emplace(geo.index(v), du + c);
            if (fresh || du + c < it->second) {
                it->second = du + c;
                queue.push({it->second, geo.index(v)});
            }
        });
    }
    std::unordered_map<std::uint32_t, ExactCost> out;
    for (auto t : d.border())
        if (auto it = dist.find(geo.index(t)); it != dist.end()) out.emplace(it->first, it->second);
    return out;
}

/// Cheapest cost from s to the border cell t along a path whose states
/// before t all lie in D; infinity if there is none.
inline ExactCost restricted_cost(const Region& d, Cell s, Cell t, const BeliefMap& belief) {
    if (!d.on_border(t)) throw std::invalid_argument("restricted_cost: " + to_string(t) + " not on the border");
    const auto costs = restricted_costs_from(d, s, belief);
    const auto it = costs.find(belief.geometry().index(t));
    return it == costs.end() ? ExactCost::infinity() : it->second;
}

/// For every s in D: h(s) < k(s, t) + h(t) for every border cell t, k being
/// the D-restricted path cost.
inline bool is_cost_sensitive_depression(const Region& d, const HValues& h, const BeliefMap& belief) {
    const auto& geo = belief.geometry();
    for (auto s : d.cells()) {
        const ExactCost hs = h(s);
        for (const auto& [t, k] : restricted_costs_from(d, s, belief))
            if (!(hs < k + h(geo.cell(t)))) return false;
    }
    return true;
}

/// Every border cell has h at least as large as every cell of D.
inline bool is_ishida_depression(const Region& d, const HValues& h) {
    ExactCost interior_max = ExactCost::zero();
    for (auto s : d.cells()) interior_max = max(interior_max, h(s));
    for (auto t : d.border())
        if (h(t) < interior_max) return false;
    return true;
}

namespace detail {

inline std::vector<Cell> component_at_or_below(const BeliefMap& belief, const HValues& h, Cell seed, ExactCost level) {
    const auto& geo = belief.geometry();
    std::vector<std::uint8_t> seen(geo.size(), 0);
    std::vector<Cell> out, stack{seed};
    seen[geo.index(seed)] = 1;
    while (!stack.empty()) {
        const Cell s = stack.back();
        stack.pop_back();
        out.push_back(s);
        belief.for_each_successor(s, [&](Cell t, ExactCost) {
            auto& flag = seen[geo.index(t)];
            if (!flag && !(h(t) > level)) {
                flag = 1;
                stack.push_back(t);
            }
        });
    }
    return out;
}

}  // namespace detail

/// Largest region around `seed` whose border values are all at least its
/// interior values and which contains no goal: the component of
/// {h <= level} holding the seed for the highest level that keeps goals out.
/// Empty if the seed's own level already reaches a goal.
inline std::vector<Cell> grow_ishida_depression(const BeliefMap& belief, const HValues& h, Cell seed, const GoalSet& goals) {
    std::vector<ExactCost> levels;
    const auto& geo = belief.geometry();
    for (std::uint32_t i = 0; i < geo.size(); ++i) {
        const Cell c = geo.cell(i);
        if (!belief.known_blocked(c) && !(h(c) < h(seed))) levels.push_back(h(c));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<Cell> best;
    for (const auto& level : levels) {
        auto region = detail::component_at_or_below(belief, h, seed, level);
        if (std::any_of(region.begin(), region.end(), [&](Cell c) { return goals.contains(c); })) break;
        best = std::move(region);
    }
    return best;
}

/// Grows `start` one border cell at a time (row-major order of candidates)
/// while the region stays a goal-free cost-sensitive depression. The result
/// cannot be extended by any single cell.
inline std::vector<Cell> grow_cost_sensitive_depression(const BeliefMap& belief, const HValues& h, std::vector<Cell> start,
                                                        const GoalSet& goals) {
    if (!is_cost_sensitive_depression(Region(belief, start), h, belief))
        throw std::invalid_argument("grow_cost_sensitive_depression: initial region is not a depression");
    bool grew = true;
    while (grew) {
        grew = false;
        const Region current(belief, start);
        for (auto t : current.border()) {
            if (goals.contains(t)) continue;
            auto candidate = current.cells();
            candidate.push_back(t);
            if (is_cost_sensitive_depression(Region(belief, candidate), h, belief)) {
                start = std::move(candidate);
                grew = true;
                break;
            }
        }
    }
    std::sort(start.begin(), start.end());
    return start;
}

// ---------------------------------------------------------------------------
// Learning-rule oracles

/// Expected LSS learning result computed on an explicit graph: one source
/// node with an arc of cost h(b) to every frontier state b, plus every arc
/// (t, s) reversed from the belief arcs (s, t) leaving closed states. Plain
/// Dijkstra from the source gives the new h over Closed.
inline std::unordered_map<std::uint32_t, ExactCost> lss_learning_oracle(const LookaheadWorkspace& ws, const BeliefMap& belief, const HValues& h) {
    const auto& geo = ws.geometry();
    // Local node numbering: 0 is the source.
    std::unordered_map<std::uint32_t, std::size_t> node;
    std::vector<std::uint32_t> cell_of{0};
    const auto node_of = [&](Cell c) {
        const auto [it, fresh] = node.emplace(geo.index(c), cell_of.size());
        if (fresh) cell_of.push_back(geo.index(c));
        return it->second;
    };
    for (auto c : ws.closed()) node_of(c);
    for (auto c : ws.frontier()) node_of(c);

    std::vector<std::vector<std::pair<std::size_t, ExactCost>>> adj(cell_of.size());
    for (auto b : ws.frontier()) adj[0].emplace_back(node_of(b), h(b));
    for (auto s : ws.closed())
        belief.for_each_successor(s, [&](Cell t, ExactCost c) {
            if (node.count(geo.index(t))) adj[node_of(t)].emplace_back(node_of(s), c);
        });

    std::vector<ExactCost> dist(cell_of.size(), ExactCost::infinity());
    std::vector<bool> done(cell_of.size(), false);
    using Item = std::pair<ExactCost, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = ExactCost::zero();
    queue.push({dist[0], 0});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) continue;
        done[u] = true;
        for (const auto& [v, c] : adj[u])
            if (d + c < dist[v]) {
                dist[v] = d + c;
                queue.push({dist[v], v});
            }
    }

    std::unordered_map<std::uint32_t, ExactCost> out;
    for (auto s : ws.closed()) out[geo.index(s)] = dist[node.at(geo.index(s))];
    return out;
}

/// Closed states on the back-pointer path from the root to the min-f
/// frontier state.
inline std::vector<Cell> best_path_closed(const LookaheadWorkspace& ws) {
    std::vector<Cell> out;
    if (!ws.best()) return out;
    for (auto c : extract_path(ws, ws.root(), *ws.best()))
        if (ws.in_closed(c)) out.push_back(c);
    return out;
}

/// Checks one marking episode: for each newly marked state s, the connected
/// component D around s of closed states whose h rose during the episode
/// must be a cost-sensitive depression of the pre-episode heuristic.
/// On failure `why` names the first offending state.
inline bool verify_marked_depression(const HValues& pre_h, const HValues& post_h, const LookaheadWorkspace& ws, const BeliefMap& belief,
                            const std::vector<Cell>& marked, std::string* why = nullptr) {
    const auto& geo = ws.geometry();
    std::vector<std::uint8_t> raised(geo.size(), 0);
    for (auto c : ws.closed())
        if (post_h(c) > pre_h(c)) raised[geo.index(c)] = 1;
    for (auto s : marked) {
        if (!raised[geo.index(s)]) {
            if (why) *why = "marked state " + to_string(s) + " is not a closed state whose h rose";
            return false;
        }
        std::vector<std::uint8_t> seen(geo.size(), 0);
        std::vector<Cell> component, stack{s};
        seen[geo.index(s)] = 1;
        while (!stack.empty()) {
            const Cell u = stack.back();
            stack.pop_back();
            component.push_back(u);
            belief.for_each_successor(u, [&](Cell t, ExactCost) {
                const auto i = geo.index(t);
                if (raised[i] && !seen[i]) {
                    seen[i] = 1;
                    stack.push_back(t);
                }
            });
        }
        if (!is_cost_sensitive_depression(Region(belief, component), pre_h, belief)) {
            if (why) *why = "region around " + to_string(s) + " of " + std::to_string(component.size()) + " cells is not a depression";
            return false;
        }
    }
    return true;
}

}  // namespace rtsearch
