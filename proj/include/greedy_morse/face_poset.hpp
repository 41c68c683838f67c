#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace greedy_morse {

using CellId = std::uint32_t;

/// Facet relation of a finite cell complex: cells are dense ids with a
/// dimension, facets (codimension-one faces) and cofacets. Simplicial,
/// polyhedral and cubical complexes all expose one of these so the Hasse
/// diagram and gradient code never needs to know the cell type.
class FacePoset {
public:
    FacePoset() = default;

    /// `facets[c]` lists the facets of cell c; cofacets are derived.
    FacePoset(std::vector<int> dims, std::vector<std::vector<CellId>> facets)
        : dims_(std::move(dims))
        , facets_(std::move(facets))
        , cofacets_(dims_.size())
    {
        if (facets_.size() != dims_.size()) {
            throw Error(ErrorKind::InvalidInput, "facet table size does not match cell count");
        }
        for (CellId c = 0; c < size(); ++c) {
            auto& fs = facets_[c];
            std::sort(fs.begin(), fs.end());
            fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
            for (CellId f : fs) {
                if (f >= size()) {
                    throw Error(ErrorKind::InvalidInput, "facet id out of range");
                }
                if (dims_[f] + 1 != dims_[c]) {
                    throw Error(ErrorKind::InvalidInput,
                                "facet " + std::to_string(f) + " of cell " + std::to_string(c) +
                                    " is not of codimension one");
                }
                cofacets_[f].push_back(c);
            }
        }
        for (auto& cs : cofacets_) {
            std::sort(cs.begin(), cs.end());
        }
    }

    CellId size() const noexcept { return static_cast<CellId>(dims_.size()); }
    int dim(CellId c) const { return dims_.at(c); }
    const std::vector<CellId>& facets(CellId c) const { return facets_.at(c); }
    const std::vector<CellId>& cofacets(CellId c) const { return cofacets_.at(c); }

    int max_dim() const
    {
        int d = -1;
        for (int x : dims_) {
            d = std::max(d, x);
        }
        return d;
    }

    bool is_facet(CellId lower, CellId upper) const
    {
        const auto& fs = facets_.at(upper);
        return std::binary_search(fs.begin(), fs.end(), lower);
    }

    std::size_t facet_relation_count() const
    {
        std::size_t n = 0;
        for (const auto& fs : facets_) {
            n += fs.size();
        }
        return n;
    }

    /// Alternating count of cells by dimension.
    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d : dims_) {
            chi += (d % 2 == 0) ? 1 : -1;
        }
        return chi;
    }

private:
    std::vector<int> dims_;
    std::vector<std::vector<CellId>> facets_;
    std::vector<std::vector<CellId>> cofacets_;
};

} // namespace greedy_morse
