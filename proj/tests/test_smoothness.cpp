#include "greedy_morse/random.hpp"
#include "greedy_morse/smoothness.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <set>

using namespace greedy_morse;

namespace {

Valuation scalar_values(std::initializer_list<std::pair<VertexId, double>> xs)
{
    Valuation f;
    for (const auto& [v, x] : xs) {
        f.emplace(v, OrderedValue(x));
    }
    return f;
}

// u = 0, v = 1, w = 2, x = 3.
SimplicialComplex two_triangles(double fx)
{
    return build_complex({{0, 1, 2}, {1, 2, 3}}, scalar_values({{0, 1}, {1, 3}, {2, 4}, {3, fx}}));
}

// Oracle: h_f by scanning every vertex against the halo definition.
VertexId oracle_halo_min(const SimplicialComplex& k, const Simplex& s)
{
    std::optional<VertexId> best;
    for (VertexId v : k.vertex_ids()) {
        const bool member = s.contains(v) || k.contains(s.with(v));
        if (member && (!best || compare(k.value(v), k.value(*best)) < 0)) {
            best = v;
        }
    }
    return *best;
}

// Oracle: smoothness straight from the definition.
bool oracle_smooth(const SimplicialComplex& k)
{
    for (const Simplex& s : k.simplices()) {
        const VertexId h = oracle_halo_min(k, s);
        if (!s.contains(h)) {
            continue;
        }
        for (VertexId v : k.vertex_ids()) {
            if (s.contains(v) || !k.contains(s.with(v))) {
                continue;
            }
            if (oracle_halo_min(k, *s.with(v).without(h)) != h) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("two triangles: smooth, and not smooth once x drops")
{
    const auto smooth = two_triangles(5);
    const auto report = check_smooth(smooth);
    CHECK(report.smooth);
    CHECK(report.witnesses.empty());
    // σ = {u, v}: h_f(σ) = u and h_f({v, w}) = u.
    CHECK(halo_min(smooth, smooth.id_of(Simplex{0, 1})) == 0);
    CHECK(halo_min(smooth, smooth.id_of(Simplex{1, 2})) == 0);

    const auto rough = two_triangles(0.5);
    const auto bad = check_smooth(rough);
    CHECK_FALSE(bad.smooth);
    const bool recorded = std::any_of(bad.witnesses.begin(), bad.witnesses.end(), [&](const SmoothnessWitness& w) {
        return rough.simplex(w.sigma) == Simplex{0, 1} && rough.simplex(w.tau) == Simplex{0, 1, 2} &&
               w.sigma_min == 0 && w.face_min == 3;
    });
    CHECK(recorded);

    // With f(x) = 2, σ = {u, v} is still smooth but σ = {x} is not:
    // h_f({x}) = x while h_f({v}) = u.
    const auto mid = two_triangles(2);
    const auto mixed = check_smooth(mid);
    CHECK_FALSE(mixed.smooth);
    CHECK_FALSE(oracle_smooth(mid));
    for (const auto& w : mixed.witnesses) {
        CHECK(mid.simplex(w.sigma) != Simplex{0, 1});
    }
    const bool at_x = std::any_of(mixed.witnesses.begin(), mixed.witnesses.end(), [&](const SmoothnessWitness& w) {
        return mid.simplex(w.sigma) == Simplex{3} && mid.simplex(w.tau) == Simplex{1, 3} && w.sigma_min == 3 &&
               w.face_min == 0;
    });
    CHECK(at_x);
}

TEST_CASE("a single triangle is smooth under every ordering of its values")
{
    std::array<double, 3> values{1, 2, 3};
    do {
        const auto k =
            build_complex({{0, 1, 2}}, scalar_values({{0, values[0]}, {1, values[1]}, {2, values[2]}}));
        CHECK(check_smooth(k).smooth);
        CHECK(oracle_smooth(k));
    } while (std::next_permutation(values.begin(), values.end()));
}

TEST_CASE("check_smooth agrees with the definition on random complexes")
{
    std::size_t smooth = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto k = generate_random_complex(seed, 10, 3);
        const bool expected = oracle_smooth(k);
        smooth += expected ? 1 : 0;
        REQUIRE(check_smooth(k).smooth == expected);
    }
    CHECK(smooth > 0);
    CHECK(smooth < 300);
}

TEST_CASE("fast matcher")
{
    const auto k = two_triangles(5);
    CHECK(smooth_fast_match(k) == compute_gradient(k));

    const auto vertex = build_complex({}, scalar_values({{0, 1}}));
    const auto v = smooth_fast_match(vertex);
    CHECK(v.critical().size() == 1);

    try {
        smooth_fast_match(two_triangles(0.5));
        FAIL("expected NotSmooth");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSmooth);
    }
}

TEST_CASE("subdivisions are smooth and the fast matcher matches greedy there")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto k = generate_random_complex(seed, 12, 3);
        const auto sub = barycentric_subdivide(k);
        REQUIRE(check_smooth(sub.complex).smooth);
        REQUIRE(smooth_fast_match(sub.complex) == compute_gradient(sub.complex));
    }
}

TEST_CASE("faithful criticality on smooth complexes")
{
    const auto k = two_triangles(5);
    CHECK(faithful_critical_check(k, compute_gradient(k)).empty());

    const auto vertex = build_complex({}, scalar_values({{0, 1}}));
    CHECK(faithful_critical_check(vertex, compute_gradient(vertex)).empty());

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sub = barycentric_subdivide(generate_random_complex(seed, 12, 3)).complex;
        const auto v = compute_gradient(sub);
        REQUIRE(faithful_critical_check(sub, v).empty());
        // Edges at a critical vertex all point into it.
        for (CellId c : v.critical()) {
            if (sub.simplex(c).dim() != 0) {
                continue;
            }
            const VertexId m = sub.simplex(c).vertices()[0];
            for (CellId edge : sub.poset().cofacets(c)) {
                const auto other = sub.simplex(edge).without(m);
                REQUIRE(v.up(sub.id_of(*other)) == edge);
            }
        }
    }
}

TEST_CASE("critical cells satisfy the forward condition even without smoothness")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto k = generate_random_complex(seed, 20, 3);
        const auto v = compute_gradient(k);
        for (CellId c : v.critical()) {
            REQUIRE(predicted_critical(k, c));
        }
    }
}

TEST_CASE("strict flow along V-paths of smooth complexes")
{
    const auto path = build_complex({{0, 1}, {1, 2}}, scalar_values({{0, 1}, {1, 2}, {2, 3}}));
    CHECK(strict_flow_check(path, compute_gradient(path)).empty());

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sub = barycentric_subdivide(generate_random_complex(seed, 12, 3)).complex;
        REQUIRE(strict_flow_check(sub, compute_gradient(sub)).empty());
    }
}

TEST_CASE("chain minimum in subdivisions")
{
    const auto tri = build_complex({{0, 1, 2}}, scalar_values({{0, 2}, {1, 1}, {2, 3}}));
    CHECK(chain_minimum_check(tri, barycentric_subdivide(tri)).empty());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto k = generate_random_complex(seed, 12, 3);
        REQUIRE(chain_minimum_check(k, barycentric_subdivide(k)).empty());
    }
}
