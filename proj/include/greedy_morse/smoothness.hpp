#pragma once

#include "errors.hpp"
#include "gradient.hpp"
#include "simplicial_complex.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace greedy_morse {

/// h_f(σ) for every cell, indexed by cell id.
inline std::vector<VertexId> halo_minima(const SimplicialComplex& k)
{
    std::vector<VertexId> out(k.size());
    for (CellId c = 0; c < k.size(); ++c) {
        out[c] = halo_min(k, c);
    }
    return out;
}

/// One failure of smoothness: σ has h_f(σ) ∈ σ but the facet τ \ h_f(σ) of
/// the cofacet τ has a different minimiser.
struct SmoothnessWitness {
    CellId sigma = 0;
    CellId tau = 0;
    VertexId sigma_min = 0;
    VertexId face_min = 0;
};

struct SmoothnessReport {
    bool smooth = true;
    std::vector<SmoothnessWitness> witnesses;
};

/// A cell σ is smooth when h_f(σ) ∈ σ implies h_f(τ \ h_f(σ)) = h_f(σ) for
/// every cofacet τ; cells with h_f(σ) ∉ σ are smooth by default.
inline SmoothnessReport check_smooth(const SimplicialComplex& k)
{
    const auto minima = halo_minima(k);
    SmoothnessReport report;
    for (CellId c = 0; c < k.size(); ++c) {
        const VertexId h = minima[c];
        if (!k.simplex(c).contains(h)) {
            continue;
        }
        for (CellId tau : k.poset().cofacets(c)) {
            const CellId face = k.id_of(*k.simplex(tau).without(h));
            if (minima[face] != h) {
                report.witnesses.push_back({c, tau, h, minima[face]});
            }
        }
    }
    report.smooth = report.witnesses.empty();
    return report;
}

/// Pairs σ -> σ ∪ h_f(σ) whenever h_f(σ) ∉ σ; every other cell is critical.
/// Throws NotSmooth unless check_smooth(k) passes, since only then does the
/// result agree with the greedy matcher.
inline DiscreteGradientField smooth_fast_match(const SimplicialComplex& k)
{
    const auto report = check_smooth(k);
    if (!report.smooth) {
        const auto& w = report.witnesses.front();
        throw Error(ErrorKind::NotSmooth, "cell " + k.simplex(w.sigma).to_string() + " fails smoothness along " +
                                              k.simplex(w.tau).to_string());
    }
    DiscreteGradientField v(k.size());
    for (CellId c = 0; c < k.size(); ++c) {
        const Simplex& sigma = k.simplex(c);
        const VertexId h = halo_min(k, c);
        if (!sigma.contains(h)) {
            v.add_pair(c, k.id_of(sigma.with(h)));
        }
    }
    return v;
}

/// True iff h_f(σ) ∈ σ and, for σ of positive dimension, h_f(σ \ h_f(σ)) ∉ σ.
inline bool predicted_critical(const SimplicialComplex& k, CellId c)
{
    const Simplex& sigma = k.simplex(c);
    const VertexId h = halo_min(k, c);
    if (!sigma.contains(h)) {
        return false;
    }
    const auto face = sigma.without(h);
    return !face || !sigma.contains(halo_min(k, k.id_of(*face)));
}

/// On a smooth complex, for every critical σ:
///  * each facet of σ is matched upward;
///  * for each cofacet τ, τ \ h_f(σ) -> τ;
/// and a cell is critical exactly when predicted_critical holds.
inline std::vector<Violation> faithful_critical_check(const SimplicialComplex& k, const DiscreteGradientField& v)
{
    std::vector<Violation> out;
    for (CellId c = 0; c < k.size(); ++c) {
        const Simplex& sigma = k.simplex(c);
        const bool critical = v.is_critical(c);
        if (critical != predicted_critical(k, c)) {
            out.push_back({"critical_iff", {c},
                           sigma.to_string() + (critical ? " is critical but not predicted"
                                                         : " is predicted critical but matched")});
        }
        if (!critical) {
            continue;
        }
        for (CellId rho : k.poset().facets(c)) {
            if (!v.up(rho)) {
                out.push_back({"critical_above", {c, rho},
                               "facet " + k.simplex(rho).to_string() + " of " + sigma.to_string() +
                                   " is not matched upward"});
            }
        }
        const VertexId h = halo_min(k, c);
        if (!sigma.contains(h)) {
            continue;
        }
        for (CellId tau : k.poset().cofacets(c)) {
            const CellId face = k.id_of(*k.simplex(tau).without(h));
            if (v.up(face) != tau) {
                out.push_back({"critical_below", {c, tau, face},
                               k.simplex(face).to_string() + " is not matched to " + k.simplex(tau).to_string()});
            }
        }
    }
    return out;
}

/// Along every V-path ending at a critical cell, f(σ_i) strictly decreases.
inline std::vector<Violation> strict_flow_check(const SimplicialComplex& k, const DiscreteGradientField& v,
                                                std::size_t budget = 10'000'000)
{
    return strictly_decreasing_check(
        k.poset(), v, [&k](CellId a, CellId b) { return k.compare_cells(a, b); }, true, budget);
}

/// For every chain σ_0 ⊊ … ⊊ σ_k of `sub` (one simplex of the subdivision),
/// the value-minimal barycentre b(ρ) in the halo of {b(σ_0), …, b(σ_{i-1})}
/// with σ_{i-1} ⊊ ρ ⊆ σ_i is ρ = σ_{i-1} ∪ argmin_f(σ_i \ σ_{i-1}); for i = 0
/// the prefix is empty and the candidates are the faces of σ_0.
inline std::vector<Violation> chain_minimum_check(const SimplicialComplex& base, const Subdivision& sub)
{
    const SimplicialComplex& k = sub.complex;
    std::vector<Violation> out;
    for (CellId c = 0; c < k.size(); ++c) {
        std::vector<VertexId> chain = k.simplex(c).vertices();
        std::sort(chain.begin(), chain.end(), [&sub](VertexId a, VertexId b) {
            return sub.barycenter_of[a].size() < sub.barycenter_of[b].size();
        });
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const Simplex& top = sub.barycenter_of[chain[i]];
            std::optional<CellId> prefix_cell;
            if (i > 0) {
                prefix_cell = k.id_of(Simplex(std::vector<VertexId>(chain.begin(), chain.begin() + i)));
            }
            std::vector<VertexId> halo_members;
            if (prefix_cell) {
                halo_members = halo(k, *prefix_cell).members;
            } else {
                halo_members = k.vertex_ids();
            }

            std::optional<VertexId> best;
            for (VertexId rho : halo_members) {
                const Simplex& cand = sub.barycenter_of[rho];
                if (!cand.is_subset_of(top)) {
                    continue;
                }
                if (i > 0) {
                    const Simplex& below = sub.barycenter_of[chain[i - 1]];
                    if (!below.is_subset_of(cand) || cand == below) {
                        continue;
                    }
                }
                if (!best || k.rank(rho) < k.rank(*best)) {
                    best = rho;
                }
            }

            VertexId gained = 0;
            bool first = true;
            for (VertexId x : top.vertices()) {
                if (i > 0 && sub.barycenter_of[chain[i - 1]].contains(x)) {
                    continue;
                }
                if (first || base.rank(x) < base.rank(gained)) {
                    gained = x;
                    first = false;
                }
            }
            const Simplex expected =
                i > 0 ? sub.barycenter_of[chain[i - 1]].with(gained) : Simplex{gained};
            if (!best || sub.barycenter_of[*best] != expected) {
                out.push_back({"chain_minimum", {c},
                               "step " + std::to_string(i) + " of chain " + k.simplex(c).to_string() +
                                   " expected " + expected.to_string() + " got " +
                                   (best ? sub.barycenter_of[*best].to_string() : std::string("nothing"))});
            }
        }
    }
    return out;
}

} // namespace greedy_morse
