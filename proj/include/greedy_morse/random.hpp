#pragma once

#include "cubical.hpp"
#include "greedy_matching.hpp"
#include "ordered_value.hpp"
#include "simplicial_complex.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace greedy_morse {

using Rng = std::mt19937_64;

namespace detail {

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace detail

/// Random complex on 1..max_vertices vertices with maximal simplices of
/// dimension up to max_dim and a random injective valuation (a shuffled
/// 1..n). The same arguments always give the same complex.
inline SimplicialComplex generate_random_complex(std::uint64_t seed, std::size_t max_vertices, int max_dim)
{
    if (max_vertices == 0 || max_dim < 0) {
        throw Error(ErrorKind::InvalidInput, "random complex bounds must be positive");
    }
    Rng rng(seed);
    const std::size_t n = detail::uniform_index(rng, 1, max_vertices);
    std::vector<double> values(n);
    std::iota(values.begin(), values.end(), 1.0);
    std::shuffle(values.begin(), values.end(), rng);
    Valuation f;
    for (std::size_t v = 0; v < n; ++v) {
        f.emplace(static_cast<VertexId>(v), OrderedValue(values[v]));
    }

    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    const std::size_t top_dim = std::min<std::size_t>(static_cast<std::size_t>(max_dim), n - 1);
    const std::size_t count = detail::uniform_index(rng, 1, n);
    std::vector<std::vector<VertexId>> simplices;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t size = detail::uniform_index(rng, 1, top_dim + 1);
        std::shuffle(ids.begin(), ids.end(), rng);
        simplices.emplace_back(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
    }
    return SimplicialComplex::build(simplices, f);
}

/// Random graph on 2..max_vertices nodes with integer weights such that no
/// two edges sharing a node have equal weight; non-adjacent ties do occur.
inline WeightedMatchGraph<double> generate_random_graph(std::uint64_t seed, std::size_t max_vertices)
{
    Rng rng(seed);
    const std::size_t n = detail::uniform_index(rng, 2, std::max<std::size_t>(2, max_vertices));
    const double density = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
    std::vector<std::pair<NodeId, NodeId>> ends;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (std::bernoulli_distribution(density)(rng)) {
                ends.emplace_back(u, v);
            }
        }
    }
    std::vector<WeightedEdge<double>> edges;
    for (const auto& [u, v] : ends) {
        std::set<double> taken;
        for (const auto& e : edges) {
            if (e.u == u || e.v == u || e.u == v || e.v == v) {
                taken.insert(e.weight);
            }
        }
        // Fewer than |ends| edges are adjacent, so a free weight exists.
        double w = 0;
        do {
            w = static_cast<double>(detail::uniform_index(rng, 1, ends.size()));
        } while (taken.contains(w));
        edges.push_back({u, v, w});
    }
    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), NodeId{0});
    return WeightedMatchGraph<double>(std::move(nodes), std::move(edges));
}

/// Random valid poset with inconsistent pairs on 1..max_elements elements.
/// The order is drawn on a hidden linear extension; elements are then
/// listed in shuffled order so the input order is arbitrary. Inconsistent
/// pairs are incomparable and have no common upper bound.
inline Pip generate_random_pip(std::uint64_t seed, std::size_t max_elements)
{
    Rng rng(seed);
    const std::size_t n = detail::uniform_index(rng, 1, std::max<std::size_t>(1, max_elements));
    const double density = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    Pip p;
    for (std::size_t i = 0; i < n; ++i) {
        p.elements.push_back("e" + std::to_string(i));
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (std::bernoulli_distribution(density)(rng)) {
                p.covers.emplace_back(a, b);
            }
        }
    }
    const PipClosure c = close_pip(p);
    const std::size_t attempts = detail::uniform_index(rng, 0, n);
    for (std::size_t t = 0; t < attempts; ++t) {
        const std::size_t a = detail::uniform_index(rng, 0, n - 1);
        const std::size_t b = detail::uniform_index(rng, 0, n - 1);
        const ElementSet up_a = c.above[a] | ElementSet{1} << a;
        const ElementSet up_b = c.above[b] | ElementSet{1} << b;
        if (a != b && (up_a & up_b) == 0) {
            p.inconsistent.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(p.inconsistent.begin(), p.inconsistent.end());
    p.inconsistent.erase(std::unique(p.inconsistent.begin(), p.inconsistent.end()), p.inconsistent.end());

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return p.permuted(perm);
}

/// A random permutation of 0..n-1.
inline std::vector<std::size_t> random_permutation(std::uint64_t seed, std::size_t n)
{
    Rng rng(seed);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

} // namespace greedy_morse
