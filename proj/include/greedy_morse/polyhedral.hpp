#pragma once

#include "errors.hpp"
#include "face_poset.hpp"
#include "gradient.hpp"
#include "hasse.hpp"
#include "ordered_value.hpp"
#include "simplicial_complex.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace greedy_morse {

/// A polyhedral complex given by the vertex sets of its cells. A cell's
/// dimension is one more than the largest dimension among the listed cells
/// strictly inside it; its facets are the cells inside it one dimension
/// lower. Every valued vertex is a 0-cell.
class PolyhedralComplex {
public:
    PolyhedralComplex() = default;

    static PolyhedralComplex build(const std::vector<std::vector<VertexId>>& cells, const Valuation& valuation)
    {
        PolyhedralComplex k;
        k.vertices_ = SimplicialComplex::build({}, valuation);

        std::vector<Simplex> all;
        for (VertexId v : k.vertices_.vertex_ids()) {
            all.push_back(Simplex{v});
        }
        for (const auto& raw : cells) {
            Simplex cell(raw);
            for (VertexId v : cell.vertices()) {
                if (!valuation.contains(v)) {
                    throw Error(ErrorKind::UnknownVertex,
                                "vertex " + std::to_string(v) + " of cell " + cell.to_string() + " has no value");
                }
            }
            if (cell.size() > 1) {
                all.push_back(std::move(cell));
            }
        }
        std::sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        all.erase(std::unique(all.begin(), all.end()), all.end());

        // Proper subsets have fewer vertices, so sorting by size makes every
        // face precede the cells containing it.
        std::vector<int> dims(all.size(), 0);
        for (std::size_t c = 0; c < all.size(); ++c) {
            if (all[c].size() == 1) {
                continue;
            }
            int d = -1;
            for (std::size_t f = 0; f < c; ++f) {
                if (all[f].size() < all[c].size() && all[f].is_subset_of(all[c])) {
                    d = std::max(d, dims[f]);
                }
            }
            dims[c] = d + 1;
        }

        // Renumber by (dimension, vertex list).
        std::vector<std::size_t> order(all.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return dims[a] != dims[b] ? dims[a] < dims[b] : all[a] < all[b];
        });
        std::vector<int> sorted_dims;
        for (std::size_t i : order) {
            k.cells_.push_back(all[i]);
            sorted_dims.push_back(dims[i]);
        }

        std::vector<std::vector<CellId>> facets(k.cells_.size());
        for (CellId c = 0; c < k.cells_.size(); ++c) {
            for (CellId f = 0; f < k.cells_.size(); ++f) {
                if (sorted_dims[f] + 1 == sorted_dims[c] && k.cells_[f].is_subset_of(k.cells_[c])) {
                    facets[c].push_back(f);
                }
            }
        }
        for (CellId c = 0; c < k.cells_.size(); ++c) {
            k.lookup_.emplace(k.cells_[c], c);
            auto& ranks = k.cell_ranks_.emplace_back();
            for (VertexId v : k.cells_[c].vertices()) {
                ranks.push_back(k.vertices_.rank(v));
            }
            std::sort(ranks.begin(), ranks.end());
        }
        k.poset_ = FacePoset(std::move(sorted_dims), std::move(facets));
        return k;
    }

    CellId size() const noexcept { return static_cast<CellId>(cells_.size()); }
    const FacePoset& poset() const noexcept { return poset_; }
    const Simplex& cell(CellId c) const { return cells_.at(c); }
    const Valuation& valuation() const noexcept { return vertices_.valuation(); }
    const OrderedValue& value(VertexId v) const { return vertices_.value(v); }
    std::uint32_t rank(VertexId v) const { return vertices_.rank(v); }

    CellId id_of(const Simplex& s) const
    {
        auto it = lookup_.find(s);
        if (it == lookup_.end()) {
            throw Error(ErrorKind::NotInComplex, s.to_string() + " is not a cell of the complex");
        }
        return it->second;
    }

    /// Lex order of the vertex-value sets.
    std::strong_ordering compare_cells(CellId a, CellId b) const
    {
        return lex_compare_sorted(std::span<const std::uint32_t>(cell_ranks_.at(a)),
                                  std::span<const std::uint32_t>(cell_ranks_.at(b)),
                                  [](std::uint32_t x, std::uint32_t y) { return x <=> y; });
    }

    long long euler_characteristic() const { return poset_.euler_characteristic(); }

private:
    SimplicialComplex vertices_;
    std::vector<Simplex> cells_;
    std::unordered_map<Simplex, CellId, SimplexHash> lookup_;
    std::vector<std::vector<std::uint32_t>> cell_ranks_;
    FacePoset poset_;
};

/// Modified Hasse diagram under the lex order of cell values; arc weight is
/// the value set of the vertices the upper cell adds.
inline HasseDiagram<OrderedValue> build_modified_hasse(const PolyhedralComplex& k)
{
    return build_modified_hasse<OrderedValue>(
        k.poset(), [&k](CellId a, CellId b) { return k.compare_cells(a, b) < 0; },
        [&k](CellId lower, CellId upper) {
            std::vector<OrderedValue> gained;
            for (VertexId v : k.cell(upper).vertices()) {
                if (!k.cell(lower).contains(v)) {
                    gained.push_back(k.value(v));
                }
            }
            return OrderedValue::set(std::move(gained));
        });
}

inline DiscreteGradientField compute_gradient(const PolyhedralComplex& k)
{
    return greedy_gradient(build_modified_hasse(k));
}

} // namespace greedy_morse
