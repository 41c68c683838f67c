#pragma once

#include "errors.hpp"
#include "face_poset.hpp"
#include "greedy_matching.hpp"
#include "hasse.hpp"
#include "simplicial_complex.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace greedy_morse {

/// A matching on the facet relation read as pairs σ -> τ (σ ≺ τ). Cells in
/// no pair are critical.
class DiscreteGradientField {
public:
    DiscreteGradientField() = default;
    explicit DiscreteGradientField(CellId cell_count)
        : up_(cell_count)
        , down_(cell_count)
    {
    }

    /// Throws InvalidInput if a cell occurs in two pairs.
    static DiscreteGradientField from_pairs(CellId cell_count, const std::vector<std::pair<CellId, CellId>>& pairs)
    {
        DiscreteGradientField v(cell_count);
        for (const auto& [lower, upper] : pairs) {
            v.add_pair(lower, upper);
        }
        return v;
    }

    void add_pair(CellId lower, CellId upper)
    {
        if (lower >= size() || upper >= size()) {
            throw Error(ErrorKind::InvalidInput, "pair refers to an unknown cell");
        }
        if (is_paired(lower) || is_paired(upper) || lower == upper) {
            throw Error(ErrorKind::InvalidInput, "cell " + std::to_string(is_paired(lower) ? lower : upper) +
                                                     " would belong to two pairs");
        }
        up_[lower] = upper;
        down_[upper] = lower;
    }

    CellId size() const noexcept { return static_cast<CellId>(up_.size()); }

    /// τ with σ -> τ, if σ is matched upward.
    std::optional<CellId> up(CellId c) const { return up_.at(c); }
    /// σ with σ -> τ, if τ is matched downward.
    std::optional<CellId> down(CellId c) const { return down_.at(c); }

    bool is_paired(CellId c) const { return up_.at(c).has_value() || down_.at(c).has_value(); }
    bool is_critical(CellId c) const { return !is_paired(c); }

    std::vector<std::pair<CellId, CellId>> pairs() const
    {
        std::vector<std::pair<CellId, CellId>> out;
        for (CellId c = 0; c < size(); ++c) {
            if (up_[c]) {
                out.emplace_back(c, *up_[c]);
            }
        }
        return out;
    }

    std::vector<CellId> critical() const
    {
        std::vector<CellId> out;
        for (CellId c = 0; c < size(); ++c) {
            if (is_critical(c)) {
                out.push_back(c);
            }
        }
        return out;
    }

    friend bool operator==(const DiscreteGradientField&, const DiscreteGradientField&) = default;

private:
    std::vector<std::optional<CellId>> up_;
    std::vector<std::optional<CellId>> down_;
};

/// Reads matched arcs of a Hasse diagram as σ -> τ pairs.
template <class W>
DiscreteGradientField field_from_matching(const HasseDiagram<W>& h, const Matching<W>& m)
{
    DiscreteGradientField v(h.node_count);
    for (std::size_t e : m.matched) {
        v.add_pair(h.arcs[e].lower, h.arcs[e].upper);
    }
    return v;
}

/// Greedy matching on a weighted Hasse diagram, read as a vector field.
template <class W, class Compare = std::less<W>>
DiscreteGradientField greedy_gradient(const HasseDiagram<W>& h, Compare less = {})
{
    const auto graph = to_match_graph(h, std::move(less));
    return field_from_matching(h, greedy_match(graph));
}

/// Builds the weighted Hasse diagram of `k` and runs the greedy matcher on
/// it. The plain variant weights σ ≺ τ by f(τ \ σ); the modified variant
/// drops arcs whose upper cell is lex-larger.
inline DiscreteGradientField compute_gradient(const SimplicialComplex& k, HasseVariant variant = HasseVariant::Plain)
{
    if (variant == HasseVariant::Modified) {
        return greedy_gradient(build_modified_hasse(k));
    }
    return greedy_gradient(build_hasse(k));
}

/// True iff every pair is a facet relation and there is no non-trivial
/// closed V-path. Cycle search runs on the digraph σ -> σ' where σ' is a
/// facet of V(σ) other than σ; such edges never leave a dimension band.
inline bool is_gradient(const FacePoset& poset, const DiscreteGradientField& v)
{
    if (v.size() != poset.size()) {
        return false;
    }
    for (const auto& [lower, upper] : v.pairs()) {
        if (!poset.is_facet(lower, upper)) {
            return false;
        }
    }

    enum class Mark : unsigned char { White, Grey, Black };
    std::vector<Mark> mark(poset.size(), Mark::White);
    std::vector<std::pair<CellId, std::size_t>> stack;
    for (CellId root = 0; root < poset.size(); ++root) {
        if (mark[root] != Mark::White || !v.up(root)) {
            continue;
        }
        stack.assign(1, {root, 0});
        mark[root] = Mark::Grey;
        while (!stack.empty()) {
            auto& [sigma, next] = stack.back();
            const auto& faces = poset.facets(*v.up(sigma));
            if (next == faces.size()) {
                mark[sigma] = Mark::Black;
                stack.pop_back();
                continue;
            }
            const CellId succ = faces[next++];
            if (succ == sigma || !v.up(succ)) {
                continue;
            }
            if (mark[succ] == Mark::Grey) {
                return false;
            }
            if (mark[succ] == Mark::White) {
                mark[succ] = Mark::Grey;
                stack.emplace_back(succ, 0);
            }
        }
    }
    return true;
}

/// σ_0 τ_0 σ_1 τ_1 … σ_n with σ_i -> τ_i and σ_{i+1} ≺ τ_i, σ_{i+1} ≠ σ_i.
struct VPath {
    std::vector<CellId> cells;

    std::size_t length() const noexcept { return cells.size() / 2; }
    CellId sigma(std::size_t i) const { return cells.at(2 * i); }
    CellId tau(std::size_t i) const { return cells.at(2 * i + 1); }
    CellId first() const { return cells.front(); }
    CellId last() const { return cells.back(); }
    bool closed() const { return length() > 0 && first() == last(); }

    friend bool operator==(const VPath&, const VPath&) = default;
};

enum class TraceMode {
    Tree,    // every continuation
    Single,  // the smallest continuation in the cell order
};

/// Streams every maximal V-path from `start` to `visit`. A path ends at the
/// first σ that is not matched upward (critical or matched downward).
/// Throws CycleDetected on a closed V-path and BudgetExceeded after `budget`
/// emitted paths.
template <class Visit>
void for_each_vpath(const FacePoset& poset, const DiscreteGradientField& v, CellId start, Visit&& visit,
                    std::size_t budget = 10'000'000)
{
    std::vector<CellId> cells{start};
    std::vector<bool> on_path(poset.size(), false);
    on_path[start] = true;
    std::size_t emitted = 0;

    std::function<void()> walk = [&]() {
        const CellId sigma = cells.back();
        const auto tau = v.up(sigma);
        if (!tau) {
            if (++emitted > budget) {
                throw Error(ErrorKind::BudgetExceeded, "V-path enumeration exceeded its budget");
            }
            visit(std::span<const CellId>(cells));
            return;
        }
        cells.push_back(*tau);
        for (CellId next : poset.facets(*tau)) {
            if (next == sigma) {
                continue;
            }
            if (on_path[next]) {
                throw Error(ErrorKind::CycleDetected, "closed V-path through cell " + std::to_string(next));
            }
            on_path[next] = true;
            cells.push_back(next);
            walk();
            cells.pop_back();
            on_path[next] = false;
        }
        cells.pop_back();
    };
    walk();
}

/// Tree mode returns every maximal V-path from `start`; single mode follows
/// the `less`-smallest facet at each step and returns one path.
template <class CellLess>
std::vector<VPath> trace_vpath(const FacePoset& poset, const DiscreteGradientField& v, CellId start, TraceMode mode,
                               CellLess&& less, std::size_t budget = 1'000'000)
{
    std::vector<VPath> out;
    if (mode == TraceMode::Tree) {
        for_each_vpath(
            poset, v, start, [&out](std::span<const CellId> cells) { out.push_back({{cells.begin(), cells.end()}}); },
            budget);
        return out;
    }

    VPath path{{start}};
    std::vector<bool> seen(poset.size(), false);
    seen[start] = true;
    for (CellId sigma = start; v.up(sigma);) {
        const CellId tau = *v.up(sigma);
        std::optional<CellId> best;
        for (CellId next : poset.facets(tau)) {
            if (next != sigma && (!best || less(next, *best))) {
                best = next;
            }
        }
        if (!best) {
            break;
        }
        if (seen[*best]) {
            throw Error(ErrorKind::CycleDetected, "closed V-path through cell " + std::to_string(*best));
        }
        seen[*best] = true;
        path.cells.push_back(tau);
        path.cells.push_back(*best);
        sigma = *best;
    }
    out.push_back(std::move(path));
    return out;
}

inline std::vector<VPath> trace_vpath(const SimplicialComplex& k, const DiscreteGradientField& v, const Simplex& start,
                                      TraceMode mode, std::size_t budget = 1'000'000)
{
    return trace_vpath(
        k.poset(), v, k.id_of(start), mode, [&k](CellId a, CellId b) { return k.compare_cells(a, b) < 0; }, budget);
}

/// V_n = {τ_i \ σ_i} (vertices gained) and W_n = {τ_i \ σ_{i+1}} (vertices
/// lost) along a simplicial V-path, each as an ascending vertex list.
inline std::pair<std::vector<VertexId>, std::vector<VertexId>> gain_loss_sets(const SimplicialComplex& k,
                                                                              const VPath& p)
{
    auto difference = [&k](CellId upper, CellId lower) {
        const Simplex& tau = k.simplex(upper);
        const Simplex& sigma = k.simplex(lower);
        for (VertexId x : tau.vertices()) {
            if (!sigma.contains(x)) {
                return x;
            }
        }
        throw Error(ErrorKind::InvalidInput, "V-path step is not a facet relation");
    };
    std::vector<VertexId> gained;
    std::vector<VertexId> lost;
    for (std::size_t i = 0; i < p.length(); ++i) {
        gained.push_back(difference(p.tau(i), p.sigma(i)));
        lost.push_back(difference(p.tau(i), p.sigma(i + 1)));
    }
    for (auto* s : {&gained, &lost}) {
        std::sort(s->begin(), s->end());
        s->erase(std::unique(s->begin(), s->end()), s->end());
    }
    return {gained, lost};
}

/// H(σ): the vertices of σ together with every v for which σ ∪ v is a
/// simplex; `argmin` is the member of smallest value, h_f(σ).
struct Halo {
    std::vector<VertexId> members;
    VertexId argmin = 0;
};

inline Halo halo(const SimplicialComplex& k, CellId c)
{
    const Simplex& sigma = k.simplex(c);
    Halo h;
    h.members = sigma.vertices();
    for (CellId up : k.poset().cofacets(c)) {
        for (VertexId x : k.simplex(up).vertices()) {
            if (!sigma.contains(x)) {
                h.members.push_back(x);
                break;
            }
        }
    }
    std::sort(h.members.begin(), h.members.end());
    h.argmin = *std::min_element(h.members.begin(), h.members.end(),
                                 [&k](VertexId a, VertexId b) { return k.rank(a) < k.rank(b); });
    return h;
}

inline Halo halo(const SimplicialComplex& k, const Simplex& s) { return halo(k, k.id_of(s)); }

/// h_f(σ) alone.
inline VertexId halo_min(const SimplicialComplex& k, CellId c) { return halo(k, c).argmin; }

/// One failed check on one cell.
struct Violation {
    std::string rule;
    std::vector<CellId> cells;
    std::string detail;
};

/// Checks on `v` = compute_gradient(k):
///  * whenever h_f(σ) ∉ σ, σ -> σ ∪ h_f(σ);
///  * every critical σ has h_f(σ) ∈ σ and, unless σ is a vertex,
///    h_f(σ \ h_f(σ)) ∉ σ.
inline std::vector<Violation> steepest_descent_check(const SimplicialComplex& k, const DiscreteGradientField& v)
{
    std::vector<Violation> out;
    for (CellId c = 0; c < k.size(); ++c) {
        const Simplex& sigma = k.simplex(c);
        const VertexId h = halo_min(k, c);
        if (!sigma.contains(h)) {
            const CellId tau = k.id_of(sigma.with(h));
            if (v.up(c) != tau) {
                out.push_back({"steepest_descent", {c, tau}, sigma.to_string() + " is not matched to " +
                                                                 k.simplex(tau).to_string()});
            }
        }
        if (!v.is_critical(c)) {
            continue;
        }
        if (!sigma.contains(h)) {
            out.push_back({"critical_contains_min", {c}, "critical " + sigma.to_string() + " does not contain h_f"});
        } else if (sigma.dim() > 0) {
            const CellId face = k.id_of(*sigma.without(h));
            if (sigma.contains(halo_min(k, face))) {
                out.push_back({"critical_face_min", {c, face},
                               "h_f(" + k.simplex(face).to_string() + ") lies in critical " + sigma.to_string()});
            }
        }
    }
    return out;
}

/// Critical cells ordered by dimension, then lex order of f(σ).
inline std::vector<CellId> sorted_critical(const SimplicialComplex& k, const DiscreteGradientField& v)
{
    auto crit = v.critical();
    std::sort(crit.begin(), crit.end(), [&k](CellId a, CellId b) {
        if (k.simplex(a).dim() != k.simplex(b).dim()) {
            return k.simplex(a).dim() < k.simplex(b).dim();
        }
        return k.compare_cells(a, b) < 0;
    });
    return crit;
}

/// Σ(-1)^dim over critical cells.
inline long long critical_euler_sum(const FacePoset& poset, const DiscreteGradientField& v)
{
    long long sum = 0;
    for (CellId c : v.critical()) {
        sum += (poset.dim(c) % 2 == 0) ? 1 : -1;
    }
    return sum;
}

/// Along every maximal V-path from every cell that ends at a critical cell,
/// the critical endpoint is smaller (under `cmp`) than every σ_i before it.
template <class Compare3>
std::vector<Violation> critical_endpoint_minimal_check(const FacePoset& poset, const DiscreteGradientField& v,
                                                       Compare3&& cmp, std::size_t budget = 10'000'000)
{
    std::vector<Violation> out;
    for (CellId start = 0; start < poset.size(); ++start) {
        if (!v.up(start)) {
            continue;
        }
        for_each_vpath(
            poset, v, start,
            [&](std::span<const CellId> cells) {
                const CellId end = cells.back();
                if (!v.is_critical(end)) {
                    return;
                }
                for (std::size_t i = 0; i + 1 < cells.size(); i += 2) {
                    if (cmp(end, cells[i]) >= 0) {
                        out.push_back({"decreasing_flow", {cells.begin(), cells.end()},
                                       "critical endpoint is not below sigma_" + std::to_string(i / 2)});
                        return;
                    }
                }
            },
            budget);
    }
    return out;
}

/// Along every maximal V-path ending at a critical σ_n, the lowest-valued
/// vertex of σ_i Δ σ_n lies in σ_n, for every σ_i before it. This is the
/// minimum-side statement; the lex order compares the maximum instead.
inline std::vector<Violation> lowest_difference_gained_check(const SimplicialComplex& k,
                                                             const DiscreteGradientField& v,
                                                             std::size_t budget = 10'000'000)
{
    // Lowest rank in exactly one of two ascending rank lists, and whether
    // it came from `b`.
    auto lowest_in_b = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() && j < b.size() && a[i] == b[j]) {
            ++i;
            ++j;
        }
        if (i == a.size()) {
            return j < b.size();
        }
        return j < b.size() && b[j] < a[i];
    };
    std::vector<Violation> out;
    for (CellId start = 0; start < k.size(); ++start) {
        if (!v.up(start)) {
            continue;
        }
        for_each_vpath(
            k.poset(), v, start,
            [&](std::span<const CellId> cells) {
                const CellId end = cells.back();
                if (!v.is_critical(end)) {
                    return;
                }
                for (std::size_t i = 0; i + 1 < cells.size(); i += 2) {
                    if (!lowest_in_b(k.cell_ranks(cells[i]), k.cell_ranks(end))) {
                        out.push_back({"lowest_difference_gained", {cells.begin(), cells.end()},
                                       "lowest vertex of sigma_" + std::to_string(i / 2) +
                                           " delta sigma_n is not in sigma_n"});
                        return;
                    }
                }
            },
            budget);
    }
    return out;
}

/// Along every maximal V-path (or only those ending at a critical cell),
/// σ_0 > σ_1 > … > σ_n strictly under `cmp`.
template <class Compare3>
std::vector<Violation> strictly_decreasing_check(const FacePoset& poset, const DiscreteGradientField& v,
                                                 Compare3&& cmp, bool only_critical_endpoints,
                                                 std::size_t budget = 10'000'000)
{
    std::vector<Violation> out;
    for (CellId start = 0; start < poset.size(); ++start) {
        if (!v.up(start)) {
            continue;
        }
        for_each_vpath(
            poset, v, start,
            [&](std::span<const CellId> cells) {
                if (only_critical_endpoints && !v.is_critical(cells.back())) {
                    return;
                }
                for (std::size_t i = 2; i < cells.size(); i += 2) {
                    if (cmp(cells[i], cells[i - 2]) >= 0) {
                        out.push_back({"strict_flow", {cells.begin(), cells.end()},
                                       "sigma_" + std::to_string(i / 2) + " is not below sigma_" +
                                           std::to_string(i / 2 - 1)});
                        return;
                    }
                }
            },
            budget);
    }
    return out;
}

} // namespace greedy_morse
