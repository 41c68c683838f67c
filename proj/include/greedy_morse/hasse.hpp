#pragma once

#include "face_poset.hpp"
#include "greedy_matching.hpp"
#include "ordered_value.hpp"
#include "simplicial_complex.hpp"

#include <compare>
#include <vector>

namespace greedy_morse {

enum class HasseVariant {
    Plain,     // one arc per facet relation
    Modified,  // only facet relations whose upper cell is smaller in the cell order
};

template <class W>
struct HasseArc {
    CellId lower = 0;
    CellId upper = 0;
    W weight{};
};

/// Facet-relation digraph of a cell complex, arcs pointing lower -> upper,
/// weighted for the greedy matcher. Nodes are the cell ids 0..node_count-1.
template <class W>
struct HasseDiagram {
    CellId node_count = 0;
    std::vector<HasseArc<W>> arcs;
    HasseVariant variant = HasseVariant::Plain;
};

/// Plain Hasse diagram of a simplicial complex. The arc σ ≺ τ is weighted by
/// f(τ \ σ), the value of the single vertex τ gains over σ.
inline HasseDiagram<OrderedValue> build_hasse(const SimplicialComplex& k)
{
    HasseDiagram<OrderedValue> h;
    h.node_count = k.size();
    h.variant = HasseVariant::Plain;
    for (CellId upper = 0; upper < k.size(); ++upper) {
        const Simplex& tau = k.simplex(upper);
        for (CellId lower : k.poset().facets(upper)) {
            const Simplex& sigma = k.simplex(lower);
            for (VertexId v : tau.vertices()) {
                if (!sigma.contains(v)) {
                    h.arcs.push_back({lower, upper, k.value(v)});
                    break;
                }
            }
        }
    }
    return h;
}

/// Modified Hasse diagram over any face poset: keep σ ≺ τ only when
/// `cell_less(τ, σ)`, and weight it with `arc_weight(σ, τ)`.
template <class W, class CellLess, class ArcWeight>
HasseDiagram<W> build_modified_hasse(const FacePoset& poset, CellLess&& cell_less, ArcWeight&& arc_weight)
{
    HasseDiagram<W> h;
    h.node_count = poset.size();
    h.variant = HasseVariant::Modified;
    for (CellId upper = 0; upper < poset.size(); ++upper) {
        for (CellId lower : poset.facets(upper)) {
            if (cell_less(upper, lower)) {
                h.arcs.push_back({lower, upper, arc_weight(lower, upper)});
            }
        }
    }
    return h;
}

/// Modified Hasse diagram of a simplicial complex under the lex order of
/// f(σ); arcs are weighted by the value set f(τ \ σ).
inline HasseDiagram<OrderedValue> build_modified_hasse(const SimplicialComplex& k)
{
    return build_modified_hasse<OrderedValue>(
        k.poset(), [&k](CellId a, CellId b) { return k.compare_cells(a, b) < 0; },
        [&k](CellId lower, CellId upper) {
            std::vector<OrderedValue> gained;
            const Simplex& sigma = k.simplex(lower);
            for (VertexId v : k.simplex(upper).vertices()) {
                if (!sigma.contains(v)) {
                    gained.push_back(k.value(v));
                }
            }
            return OrderedValue::set(std::move(gained));
        });
}

/// The undirected weighted graph the greedy matcher runs on. Edge i of the
/// result is arc i of the diagram.
template <class W, class Compare = std::less<W>>
WeightedMatchGraph<W, Compare> to_match_graph(const HasseDiagram<W>& h, Compare less = {})
{
    std::vector<NodeId> nodes(h.node_count);
    for (CellId c = 0; c < h.node_count; ++c) {
        nodes[c] = c;
    }
    std::vector<WeightedEdge<W>> edges;
    edges.reserve(h.arcs.size());
    for (const auto& arc : h.arcs) {
        edges.push_back({arc.lower, arc.upper, arc.weight});
    }
    return WeightedMatchGraph<W, Compare>(std::move(nodes), std::move(edges), std::move(less));
}

} // namespace greedy_morse
