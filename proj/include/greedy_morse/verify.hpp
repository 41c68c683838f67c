#pragma once

#include "cubical.hpp"
#include "errors.hpp"
#include "gradient.hpp"
#include "greedy_matching.hpp"
#include "hasse.hpp"
#include "random.hpp"
#include "simplicial_complex.hpp"
#include "smoothness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace greedy_morse {

/// Outcome of one property on one instance: empty means it held.
using Failures = std::vector<std::string>;

inline Failures describe(const std::vector<Violation>& vs)
{
    Failures out;
    for (const auto& v : vs) {
        out.push_back(v.rule + ": " + v.detail);
    }
    return out;
}

// Property checks on a single instance -------------------------------------

inline Failures check_is_gradient(const SimplicialComplex& k, const DiscreteGradientField& v)
{
    if (is_gradient(k.poset(), v)) {
        return {};
    }
    return {"greedy field has a closed V-path or an invalid pair"};
}

inline Failures check_morse_count(const SimplicialComplex& k, const DiscreteGradientField& v)
{
    const long long crit = critical_euler_sum(k.poset(), v);
    if (crit == k.euler_characteristic()) {
        return {};
    }
    return {"critical alternating sum " + std::to_string(crit) + " differs from Euler characteristic " +
            std::to_string(k.euler_characteristic())};
}

/// σ ⊆ τ implies H(τ) ⊆ H(σ) and f(h_f(σ)) <= f(h_f(τ)), over every
/// comparable pair.
inline Failures check_halo_monotone(const SimplicialComplex& k)
{
    Failures out;
    std::vector<Halo> halos;
    for (CellId c = 0; c < k.size(); ++c) {
        halos.push_back(halo(k, c));
    }
    for (CellId t = 0; t < k.size(); ++t) {
        const auto& verts = k.simplex(t).vertices();
        const std::uint32_t n = static_cast<std::uint32_t>(verts.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<VertexId> face;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    face.push_back(verts[i]);
                }
            }
            const CellId s = k.id_of(Simplex(std::move(face)));
            const auto& hs = halos[s].members;
            const auto& ht = halos[t].members;
            if (!std::includes(hs.begin(), hs.end(), ht.begin(), ht.end())) {
                out.push_back("H(" + k.simplex(t).to_string() + ") is not inside H(" + k.simplex(s).to_string() + ")");
            }
            if (k.rank(halos[s].argmin) > k.rank(halos[t].argmin)) {
                out.push_back("h_f(" + k.simplex(s).to_string() + ") is above h_f(" + k.simplex(t).to_string() + ")");
            }
        }
    }
    return out;
}

/// With V_n, W_n the gained and lost vertices of a V-path from σ_0 to σ_n:
/// V_n \ W_n ⊆ σ_n \ σ_0, W_n \ V_n ⊆ σ_0 \ σ_n, σ_0 \ σ_n ⊆ W_n and
/// σ_n \ σ_0 ⊆ V_n. Checked on every prefix of every maximal V-path.
inline Failures check_gain_loss(const SimplicialComplex& k, const DiscreteGradientField& v,
                                std::size_t budget = 10'000'000)
{
    Failures out;
    auto minus = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
        std::vector<VertexId> r;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
        return r;
    };
    auto subset = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (CellId start = 0; start < k.size() && out.empty(); ++start) {
        if (!v.up(start)) {
            continue;
        }
        for_each_vpath(
            k.poset(), v, start,
            [&](std::span<const CellId> cells) {
                for (std::size_t len = 3; len <= cells.size() && out.empty(); len += 2) {
                    const VPath p{{cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(len)}};
                    const auto [gained, lost] = gain_loss_sets(k, p);
                    const auto& s0 = k.simplex(p.first()).vertices();
                    const auto& sn = k.simplex(p.last()).vertices();
                    const auto added = minus(sn, s0);
                    const auto dropped = minus(s0, sn);
                    if (!subset(minus(gained, lost), added) || !subset(minus(lost, gained), dropped) ||
                        !subset(dropped, lost) || !subset(added, gained)) {
                        out.push_back("gain/loss inclusion fails on a V-path from " + k.simplex(p.first()).to_string() +
                                      " to " + k.simplex(p.last()).to_string());
                    }
                }
            },
            budget);
    }
    return out;
}

inline Failures check_adjacent_tie_free(const SimplicialComplex& k)
{
    const auto graph = to_match_graph(build_hasse(k));
    if (auto tie = graph.find_adjacent_tie()) {
        return {"arcs " + std::to_string(tie->first) + " and " + std::to_string(tie->second) +
                " share a cell and a weight"};
    }
    return {};
}

/// On a smooth complex: fast matcher equals greedy matcher pair for pair.
inline Failures check_fast_match(const SimplicialComplex& k, const DiscreteGradientField& greedy)
{
    if (smooth_fast_match(k) == greedy) {
        return {};
    }
    return {"fast matcher and greedy matcher disagree"};
}

/// Modified-diagram field on a simplicial complex: acyclic, and every V-path
/// strictly decreases in lex order.
inline Failures check_modified_flow(const SimplicialComplex& k, std::size_t budget = 10'000'000)
{
    const auto v = compute_gradient(k, HasseVariant::Modified);
    if (!is_gradient(k.poset(), v)) {
        return {"modified-diagram field has a closed V-path"};
    }
    return describe(strictly_decreasing_check(
        k.poset(), v, [&k](CellId a, CellId b) { return k.compare_cells(a, b); }, false, budget));
}

/// Greedy matching on a weighted graph: valid matching, every edge that
/// survives in G_w (w its weight) is matched, and every maximal alternating
/// path has its minimum-weight edges matched with all its vertices
/// saturated at or above that weight.
template <class W, class Compare>
Failures check_alternating_paths(const WeightedMatchGraph<W, Compare>& g, std::size_t budget = 5'000'000)
{
    Failures out;
    const auto m = greedy_match(g);
    std::vector<int> uses(g.node_bound(), 0);
    for (std::size_t e : m.matched) {
        if (++uses[g.edge(e).u] > 1 || ++uses[g.edge(e).v] > 1) {
            out.push_back("greedy output is not a matching");
            return out;
        }
    }
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& edge = g.edge(e);
        const auto sub = threshold_subgraph(g, m, Threshold<W>::at(edge.weight));
        if (sub.find_edge(edge.u, edge.v) && !m.contains(e)) {
            out.push_back("edge " + std::to_string(e) + " survives in its threshold subgraph but is unmatched");
        }
    }
    const auto paths = enumerate_maximal_alternating_paths(g, m, g.edges().size(), budget);
    for (const auto& p : paths) {
        for (std::size_t e : p.min_edges) {
            if (!m.contains(e)) {
                out.push_back("minimum edge " + std::to_string(e) + " of a maximal alternating path is unmatched");
            }
            for (NodeId x : p.nodes) {
                if (m.saturation[x] && g.less(*m.saturation[x], g.edge(e).weight)) {
                    out.push_back("vertex " + std::to_string(x) + " on a maximal path is saturated below its minimum");
                }
            }
        }
        if (!out.empty()) {
            break;
        }
    }
    return out;
}

/// Collapse certificate for X_P, its Euler characteristic, strict decrease
/// of the cube order along every V-path, the matched-arc weight minimality,
/// and a single critical cell under a random relabelling of the elements.
inline Failures check_cat0(const Pip& p, std::uint64_t relabel_seed, std::size_t budget = 10'000'000)
{
    Failures out;
    try {
        const auto cert = collapse_cat0(p);
        const CubeComplex& x = cert.complex;
        if (x.poset.euler_characteristic() != 1) {
            out.push_back("Euler characteristic " + std::to_string(x.poset.euler_characteristic()));
        }
        if (!is_gradient(x.poset, cert.field)) {
            out.push_back("cube field has a closed V-path");
        }
        for (auto&& f : describe(strictly_decreasing_check(
                 x.poset, cert.field, [&x](CellId a, CellId b) { return x.compare_cells(a, b); }, false, budget))) {
            out.push_back(std::move(f));
        }
        for (auto&& f : describe(matched_weight_minimal_check(x, cert.field))) {
            out.push_back(std::move(f));
        }
        if (cert.collapse_order.size() != cert.matching.size()) {
            out.push_back("collapse order does not use every pair");
        }
        const Pip relabelled = p.permuted(random_permutation(relabel_seed, p.size()));
        if (collapse_cat0(relabelled).critical.size() != 1) {
            out.push_back("relabelled poset has more than one critical cell");
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded) {
            throw;
        }
        out.push_back(e.what());
    }
    return out;
}

// Suite ---------------------------------------------------------------------

/// Every property the suite knows, with the module it belongs to.
struct PropertyInfo {
    std::string name;
    std::string module;
};

inline const std::vector<PropertyInfo>& all_properties()
{
    static const std::vector<PropertyInfo> properties{
        {"alternating_paths", "greedy-matching"}, {"adjacent_tie_free", "hasse"},
        {"is_gradient", "gradient"},              {"decreasing_flow", "gradient"},
        {"lowest_difference_gained", "gradient"},
        {"steepest_descent", "gradient"},         {"halo_monotone", "gradient"},
        {"gain_loss", "gradient"},                {"morse_count", "gradient"},
        {"bary_smooth", "smoothness"},            {"chain_minimum", "smoothness"},
        {"fast_match", "smoothness"},             {"faithful_critical", "smoothness"},
        {"strict_flow", "smoothness"},            {"modified_flow", "hasse"},
        {"cat0", "cubical-cat0"},
    };
    return properties;
}

struct VerificationSuiteConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::size_t max_vertices = 25;
    int max_dim = 3;
    std::size_t max_graph_vertices = 12;
    std::size_t max_pip_elements = 8;
    /// Empty means every property.
    std::vector<std::string> checks;
    /// 0 means one thread per hardware thread.
    std::size_t threads = 0;
};

struct Counterexample {
    std::size_t trial = 0;
    std::uint64_t seed = 0;  // replay with --seed <seed> --trials 1
    std::string detail;
};

struct PropertyReport {
    std::string name;
    std::string module;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;  // over budget, or hypothesis not met
    std::optional<Counterexample> first_failure;
};

struct SuiteReport {
    std::vector<PropertyReport> properties;

    bool ok() const
    {
        return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.failed == 0; });
    }

    const PropertyReport& at(const std::string& name) const
    {
        for (const auto& p : properties) {
            if (p.name == name) {
                return p;
            }
        }
        throw Error(ErrorKind::InvalidInput, "no property named " + name);
    }
};

namespace detail {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Skip;
    std::string detail;
};

/// Everything one trial needs, built on first use.
class TrialInstance {
public:
    TrialInstance(std::uint64_t seed, const VerificationSuiteConfig& config)
        : seed_(seed)
        , config_(config)
    {
    }

    const SimplicialComplex& complex()
    {
        if (!complex_) {
            complex_ = generate_random_complex(seed_, config_.max_vertices, config_.max_dim);
        }
        return *complex_;
    }

    const DiscreteGradientField& field()
    {
        if (!field_) {
            field_ = compute_gradient(complex());
        }
        return *field_;
    }

    const Subdivision& subdivision()
    {
        if (!subdivision_) {
            subdivision_ = barycentric_subdivide(complex());
        }
        return *subdivision_;
    }

    const DiscreteGradientField& subdivision_field()
    {
        if (!subdivision_field_) {
            subdivision_field_ = compute_gradient(subdivision().complex);
        }
        return *subdivision_field_;
    }

    bool complex_is_smooth()
    {
        if (!complex_smooth_) {
            complex_smooth_ = check_smooth(complex()).smooth;
        }
        return *complex_smooth_;
    }

    /// Smooth instances: the subdivision always, the complex itself when
    /// it happens to be smooth.
    template <class Check>
    Failures on_smooth_instances(Check&& check)
    {
        Failures out = check(subdivision().complex, subdivision_field());
        if (out.empty() && complex_is_smooth()) {
            out = check(complex(), field());
        }
        return out;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    const VerificationSuiteConfig& config() const noexcept { return config_; }

private:
    std::uint64_t seed_;
    const VerificationSuiteConfig& config_;
    std::optional<SimplicialComplex> complex_;
    std::optional<DiscreteGradientField> field_;
    std::optional<Subdivision> subdivision_;
    std::optional<DiscreteGradientField> subdivision_field_;
    std::optional<bool> complex_smooth_;
};

inline Failures run_property(const std::string& name, TrialInstance& t)
{
    if (name == "alternating_paths") {
        return check_alternating_paths(generate_random_graph(t.seed(), t.config().max_graph_vertices));
    }
    if (name == "adjacent_tie_free") {
        return check_adjacent_tie_free(t.complex());
    }
    if (name == "is_gradient") {
        return check_is_gradient(t.complex(), t.field());
    }
    if (name == "decreasing_flow") {
        const auto& k = t.complex();
        return describe(critical_endpoint_minimal_check(k.poset(), t.field(),
                                                        [&k](CellId a, CellId b) { return k.compare_cells(a, b); }));
    }
    if (name == "lowest_difference_gained") {
        return describe(lowest_difference_gained_check(t.complex(), t.field()));
    }
    if (name == "steepest_descent") {
        return describe(steepest_descent_check(t.complex(), t.field()));
    }
    if (name == "halo_monotone") {
        return check_halo_monotone(t.complex());
    }
    if (name == "gain_loss") {
        return check_gain_loss(t.complex(), t.field());
    }
    if (name == "morse_count") {
        return check_morse_count(t.complex(), t.field());
    }
    if (name == "bary_smooth") {
        const auto report = check_smooth(t.subdivision().complex);
        if (report.smooth) {
            return {};
        }
        const auto& w = report.witnesses.front();
        return {"subdivision is not smooth at " + t.subdivision().complex.simplex(w.sigma).to_string()};
    }
    if (name == "chain_minimum") {
        return describe(chain_minimum_check(t.complex(), t.subdivision()));
    }
    if (name == "fast_match") {
        return t.on_smooth_instances(check_fast_match);
    }
    if (name == "faithful_critical") {
        return t.on_smooth_instances([](const SimplicialComplex& k, const DiscreteGradientField& v) {
            return describe(faithful_critical_check(k, v));
        });
    }
    if (name == "strict_flow") {
        return t.on_smooth_instances([](const SimplicialComplex& k, const DiscreteGradientField& v) {
            return describe(strict_flow_check(k, v));
        });
    }
    if (name == "modified_flow") {
        return check_modified_flow(t.complex());
    }
    if (name == "cat0") {
        return check_cat0(generate_random_pip(t.seed(), t.config().max_pip_elements), t.seed() ^ 0x5bd1e995ULL);
    }
    throw Error(ErrorKind::InvalidInput, "unknown property " + name);
}

} // namespace detail

/// Runs each selected property on `trials` instances. Trial i uses seed
/// config.seed + i, so any failure replays with that seed and one trial.
/// Trials run on worker threads; results merge in trial order.
inline SuiteReport run_verification_suite(const VerificationSuiteConfig& config)
{
    std::vector<PropertyInfo> selected;
    if (config.checks.empty()) {
        selected = all_properties();
    } else {
        for (const auto& name : config.checks) {
            const auto& all = all_properties();
            auto it = std::find_if(all.begin(), all.end(), [&name](const auto& p) { return p.name == name; });
            if (it == all.end()) {
                throw Error(ErrorKind::InvalidInput, "unknown property " + name);
            }
            selected.push_back(*it);
        }
    }

    std::vector<std::vector<detail::Outcome>> results(config.trials,
                                                      std::vector<detail::Outcome>(selected.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t trial = next++; trial < config.trials; trial = next++) {
            detail::TrialInstance instance(config.seed + trial, config);
            for (std::size_t i = 0; i < selected.size(); ++i) {
                auto& outcome = results[trial][i];
                try {
                    const auto failures = detail::run_property(selected[i].name, instance);
                    outcome.status = failures.empty() ? detail::Status::Pass : detail::Status::Fail;
                    if (!failures.empty()) {
                        outcome.detail = failures.front();
                    }
                } catch (const Error& e) {
                    const bool skip = e.kind() == ErrorKind::BudgetExceeded;
                    outcome.status = skip ? detail::Status::Skip : detail::Status::Fail;
                    outcome.detail = e.what();
                }
            }
        }
    };
    std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(config.trials, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    SuiteReport report;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        PropertyReport p{selected[i].name, selected[i].module, 0, 0, 0, std::nullopt};
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            const auto& outcome = results[trial][i];
            switch (outcome.status) {
            case detail::Status::Pass: ++p.passed; break;
            case detail::Status::Skip: ++p.skipped; break;
            case detail::Status::Fail:
                ++p.failed;
                if (!p.first_failure) {
                    p.first_failure = Counterexample{trial, config.seed + trial, outcome.detail};
                }
                break;
            }
        }
        report.properties.push_back(std::move(p));
    }
    return report;
}

inline nlohmann::json suite_report_to_json(const SuiteReport& r)
{
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
        nlohmann::json j{{"name", p.name},
                         {"module", p.module},
                         {"passed", p.passed},
                         {"failed", p.failed},
                         {"skipped", p.skipped}};
        if (p.first_failure) {
            j["first_failure"] = {{"trial", p.first_failure->trial},
                                  {"seed", p.first_failure->seed},
                                  {"detail", p.first_failure->detail}};
        }
        props.push_back(std::move(j));
    }
    return {{"ok", r.ok()}, {"properties", props}};
}

} // namespace greedy_morse
