#pragma once

#include "errors.hpp"
#include "face_poset.hpp"
#include "ordered_value.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace greedy_morse {

using VertexId = std::uint32_t;

/// A non-empty, strictly ascending set of vertex ids.
class Simplex {
public:
    Simplex() = default;

    explicit Simplex(std::vector<VertexId> vertices)
        : vertices_(std::move(vertices))
    {
        if (vertices_.empty()) {
            throw Error(ErrorKind::EmptySimplex, "a simplex needs at least one vertex");
        }
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
            throw Error(ErrorKind::InvalidInput, "repeated vertex in simplex " + to_string());
        }
    }

    Simplex(std::initializer_list<VertexId> vertices)
        : Simplex(std::vector<VertexId>(vertices))
    {
    }

    int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }

    bool contains(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    bool is_subset_of(const Simplex& other) const
    {
        return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
    }

    /// Returns this simplex with `v` removed; empty optional when that would
    /// leave nothing (the empty set is not a simplex).
    std::optional<Simplex> without(VertexId v) const
    {
        if (vertices_.size() <= 1) {
            return std::nullopt;
        }
        std::vector<VertexId> rest;
        rest.reserve(vertices_.size() - 1);
        for (VertexId u : vertices_) {
            if (u != v) {
                rest.push_back(u);
            }
        }
        Simplex s;
        s.vertices_ = std::move(rest);
        return s;
    }

    Simplex with(VertexId v) const
    {
        std::vector<VertexId> more = vertices_;
        more.insert(std::upper_bound(more.begin(), more.end(), v), v);
        return Simplex(std::move(more));
    }

    std::string to_string() const
    {
        std::string out = "{";
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            out += (i ? "," : "") + std::to_string(vertices_[i]);
        }
        return out + "}";
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<VertexId> vertices_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (VertexId v : s.vertices()) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Vertex valuation f: vertex id -> ordered value.
using Valuation = std::map<VertexId, OrderedValue>;

/// A finite simplicial complex, closed under taking faces, with an
/// injective vertex valuation. Immutable after construction.
///
/// Cells are numbered by (dimension, vertex list); that numbering is the
/// CellId used by the face poset, the Hasse diagram and gradient fields.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closes `maximal_simplices` under faces. Every vertex in `valuation`
    /// becomes a 0-cell even when no listed simplex uses it.
    static SimplicialComplex build(const std::vector<std::vector<VertexId>>& maximal_simplices,
                                   const Valuation& valuation)
    {
        SimplicialComplex k;
        k.index_valuation(valuation);

        std::unordered_set<Simplex, SimplexHash> closure;
        for (VertexId v : k.vertex_ids_) {
            closure.insert(Simplex{v});
        }
        for (const auto& raw : maximal_simplices) {
            const Simplex top(raw);
            for (VertexId v : top.vertices()) {
                if (!k.vertex_index_.contains(v)) {
                    throw Error(ErrorKind::UnknownVertex,
                                "vertex " + std::to_string(v) + " of " + top.to_string() + " has no value");
                }
            }
            if (top.size() > 24) {
                throw Error(ErrorKind::BudgetExceeded, "simplex " + top.to_string() + " is too large to close");
            }
            if (closure.contains(top)) {
                continue;
            }
            const std::uint32_t n = static_cast<std::uint32_t>(top.size());
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::vector<VertexId> face;
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (mask & (1u << i)) {
                        face.push_back(top.vertices()[i]);
                    }
                }
                closure.insert(Simplex(std::move(face)));
            }
        }

        k.cells_.assign(closure.begin(), closure.end());
        std::sort(k.cells_.begin(), k.cells_.end(), [](const Simplex& a, const Simplex& b) {
            if (a.dim() != b.dim()) {
                return a.dim() < b.dim();
            }
            return a < b;
        });
        k.finish();
        return k;
    }

    CellId size() const noexcept { return static_cast<CellId>(cells_.size()); }
    int dim() const noexcept { return poset_.max_dim(); }
    const FacePoset& poset() const noexcept { return poset_; }

    const Simplex& simplex(CellId c) const { return cells_.at(c); }
    const std::vector<Simplex>& simplices() const noexcept { return cells_; }
    const std::vector<VertexId>& vertex_ids() const noexcept { return vertex_ids_; }
    const Valuation& valuation() const noexcept { return valuation_; }

    std::optional<CellId> find(const Simplex& s) const
    {
        auto it = lookup_.find(s);
        if (it == lookup_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool contains(const Simplex& s) const { return lookup_.contains(s); }

    CellId id_of(const Simplex& s) const
    {
        auto id = find(s);
        if (!id) {
            throw Error(ErrorKind::NotInComplex, s.to_string() + " is not a simplex of the complex");
        }
        return *id;
    }

    CellId vertex_cell(VertexId v) const { return id_of(Simplex{v}); }

    const OrderedValue& value(VertexId v) const { return valuation_.at(v); }

    /// Position of f(v) among all vertex values (0 = smallest). Since f is
    /// injective, every order question about vertex values reduces to ranks.
    std::uint32_t rank(VertexId v) const { return rank_.at(vertex_index_.at(v)); }

    /// f(σ) = {f(v) : v ∈ σ} as a value set.
    OrderedValue cell_value(CellId c) const
    {
        std::vector<OrderedValue> values;
        for (VertexId v : simplex(c).vertices()) {
            values.push_back(value(v));
        }
        return OrderedValue::set(std::move(values));
    }

    /// Ascending ranks of the vertices of σ.
    const std::vector<std::uint32_t>& cell_ranks(CellId c) const { return cell_ranks_.at(c); }

    /// Lex order of f(σ) against f(τ).
    std::strong_ordering compare_cells(CellId a, CellId b) const
    {
        const auto& ra = cell_ranks(a);
        const auto& rb = cell_ranks(b);
        return lex_compare_sorted(std::span<const std::uint32_t>(ra), std::span<const std::uint32_t>(rb),
                                  [](std::uint32_t x, std::uint32_t y) { return x <=> y; });
    }

    /// The vertex of σ with the smallest value.
    VertexId min_vertex(const Simplex& s) const
    {
        return *std::min_element(s.vertices().begin(), s.vertices().end(),
                                 [this](VertexId a, VertexId b) { return rank(a) < rank(b); });
    }

    std::pair<std::vector<Simplex>, std::vector<Simplex>> facets_and_cofacets(const Simplex& s) const
    {
        const CellId c = id_of(s);
        std::pair<std::vector<Simplex>, std::vector<Simplex>> out;
        for (CellId f : poset_.facets(c)) {
            out.first.push_back(cells_[f]);
        }
        for (CellId f : poset_.cofacets(c)) {
            out.second.push_back(cells_[f]);
        }
        return out;
    }

    /// Maximal simplices (cells with no cofacet), in cell order.
    std::vector<Simplex> maximal_simplices() const
    {
        std::vector<Simplex> out;
        for (CellId c = 0; c < size(); ++c) {
            if (poset_.cofacets(c).empty()) {
                out.push_back(cells_[c]);
            }
        }
        return out;
    }

    std::vector<std::size_t> count_by_dim() const
    {
        std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(dim(), 0)) + 1, 0);
        for (const Simplex& s : cells_) {
            ++counts[static_cast<std::size_t>(s.dim())];
        }
        return counts;
    }

    long long euler_characteristic() const { return poset_.euler_characteristic(); }

private:
    void index_valuation(const Valuation& valuation)
    {
        valuation_ = valuation;
        for (const auto& [v, value] : valuation_) {
            vertex_index_.emplace(v, static_cast<std::uint32_t>(vertex_ids_.size()));
            vertex_ids_.push_back(v);
        }
        std::vector<std::uint32_t> order(vertex_ids_.size());
        std::iota(order.begin(), order.end(), 0u);
        std::vector<const OrderedValue*> values;
        for (VertexId v : vertex_ids_) {
            values.push_back(&valuation_.at(v));
        }
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return compare(*values[a], *values[b]) < 0; });
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (compare(*values[order[i - 1]], *values[order[i]]) == 0) {
                throw Error(ErrorKind::DuplicateValue,
                            "vertices " + std::to_string(vertex_ids_[order[i - 1]]) + " and " +
                                std::to_string(vertex_ids_[order[i]]) + " share the value " +
                                values[order[i]]->to_string());
            }
        }
        rank_.assign(order.size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            rank_[order[i]] = static_cast<std::uint32_t>(i);
        }
    }

    void finish()
    {
        lookup_.reserve(cells_.size());
        for (CellId c = 0; c < size(); ++c) {
            lookup_.emplace(cells_[c], c);
        }
        std::vector<int> dims;
        std::vector<std::vector<CellId>> facets(cells_.size());
        dims.reserve(cells_.size());
        for (CellId c = 0; c < size(); ++c) {
            const Simplex& s = cells_[c];
            dims.push_back(s.dim());
            auto& ranks = cell_ranks_.emplace_back();
            for (VertexId v : s.vertices()) {
                ranks.push_back(rank(v));
            }
            std::sort(ranks.begin(), ranks.end());
            if (s.dim() == 0) {
                continue;
            }
            for (VertexId v : s.vertices()) {
                facets[c].push_back(lookup_.at(*s.without(v)));
            }
        }
        poset_ = FacePoset(std::move(dims), std::move(facets));
    }

    std::vector<Simplex> cells_;
    std::unordered_map<Simplex, CellId, SimplexHash> lookup_;
    FacePoset poset_;
    Valuation valuation_;
    std::vector<VertexId> vertex_ids_;
    std::unordered_map<VertexId, std::uint32_t> vertex_index_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::vector<std::uint32_t>> cell_ranks_;
};

inline SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& maximal_simplices,
                                       const Valuation& valuation)
{
    return SimplicialComplex::build(maximal_simplices, valuation);
}

inline std::pair<std::vector<Simplex>, std::vector<Simplex>> facets_and_cofacets(const SimplicialComplex& k,
                                                                                 const Simplex& s)
{
    return k.facets_and_cofacets(s);
}

/// Result of a barycentric subdivision. Vertex b(σ) of the subdivision has
/// id equal to the CellId of σ in the original complex; `barycenter_of`
/// maps it back to σ.
struct Subdivision {
    SimplicialComplex complex;
    std::vector<Simplex> barycenter_of;
};

/// Vertices are the simplices of `k`, simplices are the chains
/// σ_0 ⊂ σ_1 ⊂ … ⊂ σ_p, and b(σ) is valued by the set {f(v) : v ∈ σ}.
inline Subdivision barycentric_subdivide(const SimplicialComplex& k)
{
    Valuation values;
    for (CellId c = 0; c < k.size(); ++c) {
        values.emplace(c, k.cell_value(c));
    }

    // The maximal chains are the complete flags of maximal simplices; every
    // chain is a subset of one of them, so closure does the rest.
    std::vector<std::vector<VertexId>> flags;
    for (CellId top = 0; top < k.size(); ++top) {
        if (!k.poset().cofacets(top).empty()) {
            continue;
        }
        std::vector<VertexId> chain{top};
        std::function<void(CellId)> descend = [&](CellId c) {
            const auto& facets = k.poset().facets(c);
            if (facets.empty()) {
                flags.push_back(chain);
                return;
            }
            for (CellId f : facets) {
                chain.push_back(f);
                descend(f);
                chain.pop_back();
            }
        };
        descend(top);
    }

    Subdivision out{SimplicialComplex::build(flags, values), k.simplices()};
    return out;
}

} // namespace greedy_morse
