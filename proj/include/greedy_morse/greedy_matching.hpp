#pragma once

// Greedy matching on an undirected weighted graph: repeatedly take every
// remaining edge of globally minimal weight, match them all, and delete
// their endpoints. Weights are any type with a strict weak order; the result
// is a matching as long as no two edges that share a vertex tie.

#include "errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace greedy_morse {

using NodeId = std::uint32_t;

template <class W>
struct WeightedEdge {
    NodeId u = 0;
    NodeId v = 0;
    W weight{};
};

template <class W, class Compare = std::less<W>>
class WeightedMatchGraph {
public:
    using weight_type = W;
    using compare_type = Compare;

    WeightedMatchGraph() = default;

    WeightedMatchGraph(std::vector<NodeId> vertices, std::vector<WeightedEdge<W>> edges, Compare less = {})
        : vertices_(std::move(vertices))
        , edges_(std::move(edges))
        , less_(std::move(less))
    {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        node_bound_ = vertices_.empty() ? 0 : vertices_.back() + 1;
        present_.assign(node_bound_, false);
        for (NodeId v : vertices_) {
            present_[v] = true;
        }
        incident_.assign(node_bound_, {});
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            auto& edge = edges_[e];
            if (edge.u == edge.v) {
                throw Error(ErrorKind::InvalidInput, "self-loop at node " + std::to_string(edge.u));
            }
            if (edge.u > edge.v) {
                std::swap(edge.u, edge.v);
            }
            if (edge.v >= node_bound_ || !present_[edge.u] || !present_[edge.v]) {
                throw Error(ErrorKind::InvalidInput, "edge endpoint is not a vertex of the graph");
            }
            if (!index_.emplace(std::make_pair(edge.u, edge.v), e).second) {
                throw Error(ErrorKind::InvalidInput,
                            "parallel edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v));
            }
            incident_[edge.u].push_back(e);
            incident_[edge.v].push_back(e);
        }
    }

    const std::vector<NodeId>& vertices() const noexcept { return vertices_; }
    const std::vector<WeightedEdge<W>>& edges() const noexcept { return edges_; }
    const WeightedEdge<W>& edge(std::size_t e) const { return edges_.at(e); }
    const Compare& compare() const noexcept { return less_; }

    /// One past the largest vertex id; per-node tables are sized by this.
    NodeId node_bound() const noexcept { return node_bound_; }
    bool has_vertex(NodeId v) const { return v < node_bound_ && present_[v]; }

    const std::vector<std::size_t>& incident(NodeId v) const { return incident_.at(v); }

    std::optional<std::size_t> find_edge(NodeId u, NodeId v) const
    {
        if (u > v) {
            std::swap(u, v);
        }
        auto it = index_.find({u, v});
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool less(const W& a, const W& b) const { return less_(a, b); }
    bool equivalent(const W& a, const W& b) const { return !less_(a, b) && !less_(b, a); }

    /// First pair of equal-weight edges sharing a vertex, if any.
    std::optional<std::pair<std::size_t, std::size_t>> find_adjacent_tie() const
    {
        for (NodeId v : vertices_) {
            std::vector<std::size_t> inc = incident_[v];
            std::sort(inc.begin(), inc.end(),
                      [this](std::size_t a, std::size_t b) { return less_(edges_[a].weight, edges_[b].weight); });
            for (std::size_t i = 1; i < inc.size(); ++i) {
                if (equivalent(edges_[inc[i - 1]].weight, edges_[inc[i]].weight)) {
                    return std::make_pair(std::min(inc[i - 1], inc[i]), std::max(inc[i - 1], inc[i]));
                }
            }
        }
        return std::nullopt;
    }

private:
    std::vector<NodeId> vertices_;
    std::vector<WeightedEdge<W>> edges_;
    Compare less_{};
    NodeId node_bound_ = 0;
    std::vector<bool> present_;
    std::vector<std::vector<std::size_t>> incident_;
    std::map<std::pair<NodeId, NodeId>, std::size_t> index_;
};

/// A set of vertex-disjoint edges plus the saturation function: the weight
/// of the matched edge at a vertex, or nullopt standing for +infinity.
template <class W>
struct Matching {
    std::vector<std::size_t> matched;              // edge indices, ascending
    std::vector<bool> in_matching;                 // per edge
    std::vector<std::optional<std::size_t>> mate;  // per node id: saturating edge
    std::vector<std::optional<W>> saturation;      // per node id

    bool contains(std::size_t e) const { return e < in_matching.size() && in_matching[e]; }
    bool saturated(NodeId v) const { return v < mate.size() && mate[v].has_value(); }
};

/// Builds the matching record for an explicit edge set. Throws
/// InvalidInput if two of the edges share a vertex.
template <class W, class Compare>
Matching<W> make_matching(const WeightedMatchGraph<W, Compare>& g, std::vector<std::size_t> edges)
{
    Matching<W> m;
    m.in_matching.assign(g.edges().size(), false);
    m.mate.assign(g.node_bound(), std::nullopt);
    m.saturation.assign(g.node_bound(), std::nullopt);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t e : edges) {
        const auto& edge = g.edge(e);
        if (m.mate[edge.u] || m.mate[edge.v]) {
            throw Error(ErrorKind::InvalidInput, "edges share a vertex; not a matching");
        }
        m.in_matching[e] = true;
        m.mate[edge.u] = e;
        m.mate[edge.v] = e;
        m.saturation[edge.u] = edge.weight;
        m.saturation[edge.v] = edge.weight;
    }
    m.matched = std::move(edges);
    return m;
}

/// The greedy matching. Deterministic: edges of equal weight are visited in
/// (u, v) order, and since adjacent ties are rejected, all surviving edges of
/// the current minimum weight are pairwise disjoint and matched together.
template <class W, class Compare>
Matching<W> greedy_match(const WeightedMatchGraph<W, Compare>& g)
{
    if (auto tie = g.find_adjacent_tie()) {
        const auto& a = g.edge(tie->first);
        const auto& b = g.edge(tie->second);
        throw Error(ErrorKind::AdjacentTie, "edges " + std::to_string(a.u) + "-" + std::to_string(a.v) + " and " +
                                                std::to_string(b.u) + "-" + std::to_string(b.v) +
                                                " share a vertex and have equal weight");
    }

    std::vector<std::size_t> order(g.edges().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
        const auto& ea = g.edge(a);
        const auto& eb = g.edge(b);
        if (g.less(ea.weight, eb.weight)) {
            return true;
        }
        if (g.less(eb.weight, ea.weight)) {
            return false;
        }
        return std::make_pair(ea.u, ea.v) < std::make_pair(eb.u, eb.v);
    });

    std::vector<bool> removed(g.node_bound(), false);
    std::vector<std::size_t> chosen;
    std::size_t i = 0;
    while (i < order.size()) {
        // One iteration of the algorithm: E_min is the run of surviving edges
        // equivalent to the first surviving one.
        while (i < order.size() && (removed[g.edge(order[i]).u] || removed[g.edge(order[i]).v])) {
            ++i;
        }
        if (i == order.size()) {
            break;
        }
        const W& minimum = g.edge(order[i]).weight;
        std::vector<std::size_t> e_min;
        std::size_t j = i;
        for (; j < order.size() && g.equivalent(g.edge(order[j]).weight, minimum); ++j) {
            const auto& e = g.edge(order[j]);
            if (!removed[e.u] && !removed[e.v]) {
                e_min.push_back(order[j]);
            }
        }
        for (std::size_t e : e_min) {
            removed[g.edge(e).u] = true;
            removed[g.edge(e).v] = true;
            chosen.push_back(e);
        }
        i = j;
    }
    return make_matching(g, std::move(chosen));
}

/// A threshold for the saturation function: -inf, a finite weight, or +inf.
template <class W>
struct Threshold {
    enum class Kind { NegativeInfinity, Finite, PositiveInfinity };
    Kind kind = Kind::NegativeInfinity;
    std::optional<W> value;

    static Threshold minus_infinity() { return {Kind::NegativeInfinity, std::nullopt}; }
    static Threshold plus_infinity() { return {Kind::PositiveInfinity, std::nullopt}; }
    static Threshold at(W w) { return {Kind::Finite, std::move(w)}; }
};

/// Is saturation(v) >= a, with nullopt saturation meaning +inf?
template <class W, class Compare>
bool saturation_at_least(const WeightedMatchGraph<W, Compare>& g, const std::optional<W>& saturation,
                         const Threshold<W>& a)
{
    switch (a.kind) {
    case Threshold<W>::Kind::NegativeInfinity: return true;
    case Threshold<W>::Kind::PositiveInfinity: return !saturation.has_value();
    case Threshold<W>::Kind::Finite: return !saturation.has_value() || !g.less(*saturation, *a.value);
    }
    return false;
}

/// G_a: the subgraph induced by the vertices whose saturation is >= a.
/// Vertex ids are preserved; edge indices are not (look edges up by
/// endpoints).
template <class W, class Compare>
WeightedMatchGraph<W, Compare> threshold_subgraph(const WeightedMatchGraph<W, Compare>& g, const Matching<W>& m,
                                                  const Threshold<W>& a)
{
    std::vector<NodeId> keep;
    std::vector<bool> kept(g.node_bound(), false);
    for (NodeId v : g.vertices()) {
        if (saturation_at_least(g, m.saturation[v], a)) {
            keep.push_back(v);
            kept[v] = true;
        }
    }
    std::vector<WeightedEdge<W>> edges;
    for (const auto& e : g.edges()) {
        if (kept[e.u] && kept[e.v]) {
            edges.push_back(e);
        }
    }
    return WeightedMatchGraph<W, Compare>(std::move(keep), std::move(edges), g.compare());
}

/// A path (or cycle, when `closed`) whose edges alternate between matched
/// and unmatched. `nodes` has one more entry than `edges`; for a cycle the
/// last node repeats the first.
struct AlternatingPath {
    std::vector<std::size_t> edges;
    std::vector<NodeId> nodes;
    std::vector<std::size_t> min_edges;  // E_min(P)
    bool closed = false;
};

namespace detail {

template <class W, class Compare>
bool is_maximal_alternating(const WeightedMatchGraph<W, Compare>&, const Matching<W>& m,
                            const std::vector<std::size_t>& edges, const std::vector<NodeId>& nodes)
{
    for (NodeId v : nodes) {
        if (m.mate[v] && std::find(edges.begin(), edges.end(), *m.mate[v]) == edges.end()) {
            return false;
        }
    }
    return true;
}

template <class W, class Compare>
std::vector<std::size_t> minimum_edges(const WeightedMatchGraph<W, Compare>& g, const std::vector<std::size_t>& edges)
{
    std::vector<std::size_t> out;
    for (std::size_t e : edges) {
        if (out.empty() || g.less(g.edge(e).weight, g.edge(out.front()).weight)) {
            out.assign(1, e);
        } else if (g.equivalent(g.edge(e).weight, g.edge(out.front()).weight)) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Exhaustively lists the maximal alternating paths with at most `max_len`
/// edges: every saturated vertex on the path is saturated by a path edge.
/// Alternating cycles (which are maximal automatically) are included. Each
/// undirected path is reported once. Exponential; meant as a test oracle on
/// graphs of a dozen vertices. Throws BudgetExceeded after `budget` search
/// steps.
template <class W, class Compare>
std::vector<AlternatingPath> enumerate_maximal_alternating_paths(const WeightedMatchGraph<W, Compare>& g,
                                                                 const Matching<W>& m, std::size_t max_len,
                                                                 std::size_t budget = 5'000'000)
{
    std::vector<AlternatingPath> out;
    std::vector<bool> on_path(g.node_bound(), false);
    std::vector<std::size_t> edges;
    std::vector<NodeId> nodes;
    std::size_t steps = 0;

    auto emit = [&](bool closed) {
        AlternatingPath p;
        p.edges = edges;
        p.nodes = nodes;
        p.closed = closed;
        p.min_edges = detail::minimum_edges(g, edges);
        out.push_back(std::move(p));
    };

    std::function<void()> extend = [&]() {
        if (++steps > budget) {
            throw Error(ErrorKind::BudgetExceeded, "alternating path search exceeded its step budget");
        }
        if (edges.size() >= max_len) {
            return;
        }
        const NodeId x = nodes.back();
        for (std::size_t e : g.incident(x)) {
            if (!edges.empty() && m.contains(e) == m.contains(edges.back())) {
                continue;
            }
            const auto& edge = g.edge(e);
            const NodeId y = edge.u == x ? edge.v : edge.u;
            if (on_path[y]) {
                const bool closes = y == nodes.front() && edges.size() >= 2 && m.contains(e) != m.contains(edges.front());
                // Report each cycle once: from its smallest node, in the
                // direction whose second node is smaller than its last.
                if (closes && nodes.front() == *std::min_element(nodes.begin(), nodes.end()) && nodes[1] < x) {
                    edges.push_back(e);
                    nodes.push_back(y);
                    emit(true);
                    edges.pop_back();
                    nodes.pop_back();
                }
                continue;
            }
            edges.push_back(e);
            nodes.push_back(y);
            on_path[y] = true;
            if (nodes.front() < y && detail::is_maximal_alternating(g, m, edges, nodes)) {
                emit(false);
            }
            extend();
            on_path[y] = false;
            edges.pop_back();
            nodes.pop_back();
        }
    };

    for (NodeId s : g.vertices()) {
        nodes.assign(1, s);
        edges.clear();
        on_path[s] = true;
        extend();
        on_path[s] = false;
    }
    return out;
}

} // namespace greedy_morse
