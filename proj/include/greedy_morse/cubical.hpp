#pragma once

#include "errors.hpp"
#include "face_poset.hpp"
#include "gradient.hpp"
#include "greedy_matching.hpp"
#include "hasse.hpp"
#include "ordered_value.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace greedy_morse {

using ElementSet = std::uint64_t;

inline constexpr std::size_t max_pip_elements = 64;

/// A finite poset with inconsistent pairs. Element i of `elements` is bit i
/// of every ElementSet, and input order is the linear order used to compare
/// sets. `covers` holds pairs (a, b) with a < b (not necessarily covers;
/// the order is their transitive closure). `inconsistent` holds the
/// minimal inconsistent pairs; their upward closure is derived.
struct Pip {
    std::vector<std::string> elements;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    std::vector<std::pair<std::size_t, std::size_t>> inconsistent;

    std::size_t size() const noexcept { return elements.size(); }

    /// Same poset with element i moved to position perm[i].
    Pip permuted(const std::vector<std::size_t>& perm) const
    {
        if (perm.size() != size()) {
            throw Error(ErrorKind::InvalidInput, "permutation size does not match the element count");
        }
        Pip out;
        out.elements.resize(size());
        for (std::size_t i = 0; i < size(); ++i) {
            out.elements.at(perm[i]) = elements[i];
        }
        for (const auto& [a, b] : covers) {
            out.covers.emplace_back(perm.at(a), perm.at(b));
        }
        for (const auto& [a, b] : inconsistent) {
            out.inconsistent.emplace_back(perm.at(a), perm.at(b));
        }
        return out;
    }
};

/// Transitive closure of the order and upward closure of inconsistency.
struct PipClosure {
    std::vector<ElementSet> below;             // strictly smaller elements
    std::vector<ElementSet> above;             // strictly larger elements
    std::vector<ElementSet> inconsistent_with; // closed under going up
};

/// Throws InvalidInput on out-of-range indices, too many elements, or a
/// cyclic order; everything else is reported by validate_pip.
inline PipClosure close_pip(const Pip& p)
{
    const std::size_t n = p.size();
    if (n > max_pip_elements) {
        throw Error(ErrorKind::InvalidInput, "at most 64 poset elements are supported");
    }
    auto check = [n](std::size_t i) {
        if (i >= n) {
            throw Error(ErrorKind::InvalidInput, "element index " + std::to_string(i) + " out of range");
        }
    };
    PipClosure c;
    c.below.assign(n, 0);
    c.above.assign(n, 0);
    c.inconsistent_with.assign(n, 0);
    for (const auto& [a, b] : p.covers) {
        check(a);
        check(b);
        c.above[a] |= ElementSet{1} << b;
    }
    // Floyd-Warshall style closure on bit rows.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (c.above[i] >> k & 1) {
                c.above[i] |= c.above[k];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (c.above[i] >> i & 1) {
            throw Error(ErrorKind::InvalidInput, "order relation has a cycle through " + p.elements[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (c.above[i] >> j & 1) {
                c.below[j] |= ElementSet{1} << i;
            }
        }
    }
    for (const auto& [a, b] : p.inconsistent) {
        check(a);
        check(b);
        const ElementSet up_a = c.above[a] | ElementSet{1} << a;
        const ElementSet up_b = c.above[b] | ElementSet{1} << b;
        for (std::size_t i = 0; i < n; ++i) {
            if (up_a >> i & 1) {
                c.inconsistent_with[i] |= up_b;
            }
            if (up_b >> i & 1) {
                c.inconsistent_with[i] |= up_a;
            }
        }
    }
    return c;
}

/// Empty when `p` is a valid poset with inconsistent pairs; otherwise one
/// message per problem found.
inline std::vector<std::string> validate_pip(const Pip& p)
{
    std::vector<std::string> out;
    {
        auto names = p.elements;
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
            out.push_back("duplicate element names");
        }
    }
    PipClosure c;
    try {
        c = close_pip(p);
    } catch (const Error& e) {
        out.emplace_back(e.what());
        return out;
    }
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (!(c.inconsistent_with[i] >> j & 1)) {
                continue;
            }
            const std::string pair = "{" + p.elements[i] + ", " + p.elements[j] + "}";
            if (i == j) {
                out.push_back("element " + p.elements[i] + " is inconsistent with itself");
                continue;
            }
            if ((c.above[i] >> j & 1) || (c.above[j] >> i & 1)) {
                out.push_back("inconsistent pair " + pair + " is comparable");
            }
            const ElementSet common = (c.above[i] | ElementSet{1} << i) & (c.above[j] | ElementSet{1} << j);
            if (common != 0) {
                out.push_back("inconsistent pair " + pair + " has the common upper bound " +
                              p.elements[static_cast<std::size_t>(std::countr_zero(common))]);
            }
        }
    }
    return out;
}

/// Shortlex order on element sets, elements ranked by input position.
struct ShortlexLess {
    bool operator()(ElementSet a, ElementSet b) const { return shortlex_compare_bits(a, b) < 0; }
};

/// All consistent order ideals, ∅ included, in shortlex order. Throws
/// BudgetExceeded past `budget` ideals.
inline std::vector<ElementSet> enumerate_ideals(const Pip& p, std::size_t budget = 1'000'000)
{
    const PipClosure c = close_pip(p);
    const std::size_t n = p.size();

    // A linear extension: every element after everything below it.
    std::vector<std::size_t> order;
    ElementSet placed = 0;
    while (order.size() < n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(placed >> i & 1) && (c.below[i] & ~placed) == 0) {
                order.push_back(i);
                placed |= ElementSet{1} << i;
            }
        }
    }

    // Deciding elements in extension order, an element may join only once
    // everything below it has.
    std::vector<ElementSet> out;
    std::function<void(std::size_t, ElementSet)> walk = [&](std::size_t depth, ElementSet ideal) {
        if (depth == n) {
            if (out.size() >= budget) {
                throw Error(ErrorKind::BudgetExceeded, "ideal enumeration exceeded its budget");
            }
            out.push_back(ideal);
            return;
        }
        const std::size_t x = order[depth];
        walk(depth + 1, ideal);
        if ((c.below[x] & ~ideal) == 0 && (c.inconsistent_with[x] & ideal) == 0) {
            walk(depth + 1, ideal | ElementSet{1} << x);
        }
    };
    walk(0, 0);
    std::sort(out.begin(), out.end(), ShortlexLess{});
    return out;
}

/// Cube C(I, M): a consistent ideal I and marks M ⊆ max(I); dim = |M|.
struct CubeCell {
    ElementSet ideal = 0;
    ElementSet marks = 0;

    int dim() const noexcept { return std::popcount(marks); }
    friend bool operator==(const CubeCell&, const CubeCell&) = default;
};

struct CubeCellHash {
    std::size_t operator()(const CubeCell& c) const noexcept
    {
        return std::hash<std::uint64_t>{}(c.ideal * 0x9e3779b97f4a7c15ULL ^ c.marks);
    }
};

/// (I, M) < (I', M') iff I is shortlex-smaller, or I = I' and M is
/// shortlex-larger.
inline std::strong_ordering cube_order_compare(const CubeCell& a, const CubeCell& b)
{
    if (auto c = shortlex_compare_bits(a.ideal, b.ideal); c != 0) {
        return c;
    }
    return shortlex_compare_bits(b.marks, a.marks);
}

struct CubeOrderLess {
    bool operator()(const CubeCell& a, const CubeCell& b) const { return cube_order_compare(a, b) < 0; }
};

/// Maximal elements of an ideal.
inline ElementSet ideal_maximum(const PipClosure& c, ElementSet ideal)
{
    ElementSet out = 0;
    for (ElementSet rest = ideal; rest != 0; rest &= rest - 1) {
        const int x = std::countr_zero(rest);
        if ((c.above[static_cast<std::size_t>(x)] & ideal) == 0) {
            out |= ElementSet{1} << x;
        }
    }
    return out;
}

inline ElementSet highest_element(ElementSet s) { return ElementSet{1} << (63 - std::countl_zero(s)); }

/// The cube complex X_P with its face poset. Cells are numbered by
/// dimension, then cube order.
struct CubeComplex {
    std::vector<ElementSet> ideals;
    std::vector<CubeCell> cells;
    FacePoset poset;
    std::unordered_map<CubeCell, CellId, CubeCellHash> lookup;

    CellId size() const noexcept { return static_cast<CellId>(cells.size()); }

    CellId id_of(const CubeCell& c) const
    {
        auto it = lookup.find(c);
        if (it == lookup.end()) {
            throw Error(ErrorKind::NotInComplex, "cube is not a cell of the complex");
        }
        return it->second;
    }

    std::strong_ordering compare_cells(CellId a, CellId b) const { return cube_order_compare(cells[a], cells[b]); }
};

/// One cube per consistent ideal I and M ⊆ max(I). The facets of C(J, N)
/// are C(J, N \ p) and C(J \ p, N \ p) for p ∈ N.
inline CubeComplex build_cube_complex(const Pip& p, std::size_t budget = 1'000'000)
{
    const PipClosure closure = close_pip(p);
    CubeComplex x;
    x.ideals = enumerate_ideals(p, budget);
    for (ElementSet ideal : x.ideals) {
        const ElementSet top = ideal_maximum(closure, ideal);
        // Every submask of `top`, ∅ included.
        for (ElementSet m = top;; m = (m - 1) & top) {
            x.cells.push_back({ideal, m});
            if (x.cells.size() > budget) {
                throw Error(ErrorKind::BudgetExceeded, "cube enumeration exceeded its budget");
            }
            if (m == 0) {
                break;
            }
        }
    }
    std::sort(x.cells.begin(), x.cells.end(), [](const CubeCell& a, const CubeCell& b) {
        return a.dim() != b.dim() ? a.dim() < b.dim() : cube_order_compare(a, b) < 0;
    });
    for (CellId c = 0; c < x.size(); ++c) {
        x.lookup.emplace(x.cells[c], c);
    }
    std::vector<int> dims;
    std::vector<std::vector<CellId>> facets(x.size());
    for (CellId c = 0; c < x.size(); ++c) {
        const CubeCell& cube = x.cells[c];
        dims.push_back(cube.dim());
        for (ElementSet rest = cube.marks; rest != 0; rest &= rest - 1) {
            const ElementSet bit = rest & (~rest + 1);
            facets[c].push_back(x.id_of({cube.ideal, cube.marks & ~bit}));
            facets[c].push_back(x.id_of({cube.ideal & ~bit, cube.marks & ~bit}));
        }
    }
    x.poset = FacePoset(std::move(dims), std::move(facets));
    return x;
}

/// The facet of `upper` opposite `lower`: both lose the same mark p, one of
/// them keeps p in its ideal and the other does not.
inline CubeCell opposite_facet(const CubeCell& lower, const CubeCell& upper)
{
    const ElementSet bit = upper.marks & ~lower.marks;
    if (lower.ideal == upper.ideal) {
        return {upper.ideal & ~bit, upper.marks & ~bit};
    }
    return {upper.ideal, upper.marks & ~bit};
}

/// Modified Hasse diagram of X_P under the cube order, arcs weighted by the
/// opposite facet.
inline HasseDiagram<CubeCell> build_modified_hasse(const CubeComplex& x)
{
    return build_modified_hasse<CubeCell>(
        x.poset, [&x](CellId a, CellId b) { return x.compare_cells(a, b) < 0; },
        [&x](CellId lower, CellId upper) { return opposite_facet(x.cells[lower], x.cells[upper]); });
}

inline DiscreteGradientField compute_gradient(const CubeComplex& x)
{
    return greedy_gradient(build_modified_hasse(x), CubeOrderLess{});
}

/// The matching every cell with a non-empty ideal is expected to follow:
/// with p the highest element of max(I), (I, M \ p) -> (I, M) when p ∈ M and
/// (I, M) -> (I, M ∪ p) otherwise.
inline DiscreteGradientField closed_form_gradient(const Pip& p, const CubeComplex& x)
{
    const PipClosure closure = close_pip(p);
    DiscreteGradientField v(x.size());
    for (CellId c = 0; c < x.size(); ++c) {
        const CubeCell& cube = x.cells[c];
        if (cube.ideal == 0) {
            continue;
        }
        const ElementSet top = highest_element(ideal_maximum(closure, cube.ideal));
        if (!(cube.marks & top)) {
            v.add_pair(c, x.id_of({cube.ideal, cube.marks | top}));
        }
    }
    return v;
}

struct CollapseCertificate {
    CubeComplex complex;
    DiscreteGradientField field;
    std::vector<std::pair<CubeCell, CubeCell>> matching;
    std::vector<CubeCell> critical;
    /// Elementary collapses in order; each removes a free face and its coface.
    std::vector<std::pair<CubeCell, CubeCell>> collapse_order;
};

/// Orders the pairs of `v` into elementary collapses: a pair (σ, τ) may go
/// once τ has no remaining cofaces and τ is σ's only remaining coface.
/// Among available pairs the cube-order-smallest τ goes first. Throws
/// NotCollapsible if no pair is free before all are used.
inline std::vector<std::pair<CellId, CellId>> collapse_sequence(const CubeComplex& x, const DiscreteGradientField& v)
{
    std::vector<std::size_t> remaining_cofaces(x.size());
    std::vector<bool> removed(x.size(), false);
    for (CellId c = 0; c < x.size(); ++c) {
        remaining_cofaces[c] = x.poset.cofacets(c).size();
    }
    auto by_tau = [&x](CellId a, CellId b) { return x.compare_cells(a, b) < 0; };
    std::set<CellId, decltype(by_tau)> ready(by_tau);
    auto consider = [&](CellId tau) {
        if (removed[tau] || !v.down(tau)) {
            return;
        }
        const CellId sigma = *v.down(tau);
        if (remaining_cofaces[tau] == 0 && remaining_cofaces[sigma] == 1) {
            ready.insert(tau);
        }
    };
    for (CellId c = 0; c < x.size(); ++c) {
        consider(c);
    }

    std::vector<std::pair<CellId, CellId>> out;
    const std::size_t pair_count = v.pairs().size();
    while (!ready.empty()) {
        const CellId tau = *ready.begin();
        ready.erase(ready.begin());
        const CellId sigma = *v.down(tau);
        out.emplace_back(sigma, tau);
        removed[tau] = removed[sigma] = true;
        for (CellId cell : {tau, sigma}) {
            for (CellId f : x.poset.facets(cell)) {
                if (removed[f]) {
                    continue;
                }
                --remaining_cofaces[f];
                consider(f);
                if (v.up(f)) {
                    consider(*v.up(f));
                }
            }
        }
    }
    if (out.size() != pair_count) {
        throw Error(ErrorKind::NotCollapsible, "matching stalls after " + std::to_string(out.size()) + " of " +
                                                   std::to_string(pair_count) + " collapses");
    }
    return out;
}

/// Greedy matching on the modified Hasse diagram of X_P, checked against the
/// closed-form rule and the single critical vertex C(∅, ∅); throws
/// NotCollapsible if either check fails.
inline CollapseCertificate collapse_cat0(const Pip& p, std::size_t budget = 1'000'000)
{
    if (auto problems = validate_pip(p); !problems.empty()) {
        throw Error(ErrorKind::InvalidInput, problems.front());
    }
    CollapseCertificate cert;
    cert.complex = build_cube_complex(p, budget);
    const CubeComplex& x = cert.complex;
    cert.field = compute_gradient(x);

    const auto expected = closed_form_gradient(p, x);
    if (cert.field != expected) {
        throw Error(ErrorKind::NotCollapsible, "greedy matching differs from the highest-maximal-element rule");
    }
    const auto critical = cert.field.critical();
    if (critical.size() != 1 || x.cells[critical.front()] != CubeCell{0, 0}) {
        throw Error(ErrorKind::NotCollapsible,
                    std::to_string(critical.size()) + " critical cells instead of the empty ideal alone");
    }
    for (const auto& [lower, upper] : cert.field.pairs()) {
        cert.matching.emplace_back(x.cells[lower], x.cells[upper]);
    }
    for (CellId c : critical) {
        cert.critical.push_back(x.cells[c]);
    }
    for (const auto& [sigma, tau] : collapse_sequence(x, cert.field)) {
        cert.collapse_order.emplace_back(x.cells[sigma], x.cells[tau]);
    }
    return cert;
}

/// For each matched (σ, τ), its arc weight (the facet of τ opposite σ) is
/// strictly below the weight of every other facet relation at σ or τ.
inline std::vector<Violation> matched_weight_minimal_check(const CubeComplex& x, const DiscreteGradientField& v)
{
    std::vector<Violation> out;
    auto weight = [&x](CellId lower, CellId upper) { return opposite_facet(x.cells[lower], x.cells[upper]); };
    for (const auto& [sigma, tau] : v.pairs()) {
        const CubeCell w = weight(sigma, tau);
        auto compete = [&](CellId lower, CellId upper) {
            if (lower == sigma && upper == tau) {
                return;
            }
            if (cube_order_compare(w, weight(lower, upper)) >= 0) {
                out.push_back({"matched_weight_minimal", {sigma, tau, lower, upper},
                               "matched arc weight is not below a competing arc"});
            }
        };
        for (CellId cell : {sigma, tau}) {
            for (CellId f : x.poset.facets(cell)) {
                compete(f, cell);
            }
            for (CellId up : x.poset.cofacets(cell)) {
                compete(cell, up);
            }
        }
    }
    return out;
}

/// "C({a,b},{b})" with element names.
inline std::string describe(const Pip& p, const CubeCell& c)
{
    auto names = [&p](ElementSet s) {
        std::string out = "{";
        bool first = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (s >> i & 1) {
                out += (first ? "" : ",") + p.elements[i];
                first = false;
            }
        }
        return out + "}";
    };
    return "C(" + names(c.ideal) + "," + names(c.marks) + ")";
}

} // namespace greedy_morse
