#include "greedy_morse/greedy_matching.hpp"
#include "greedy_morse/random.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

using namespace greedy_morse;

namespace {

using Graph = WeightedMatchGraph<double>;

Graph path_graph(std::vector<double> weights)
{
    std::vector<NodeId> nodes;
    std::vector<WeightedEdge<double>> edges;
    for (NodeId i = 0; i <= weights.size(); ++i) {
        nodes.push_back(i);
    }
    for (NodeId i = 0; i < weights.size(); ++i) {
        edges.push_back({i, i + 1, weights[i]});
    }
    return Graph(nodes, edges);
}

std::set<std::size_t> matched_set(const Matching<double>& m) { return {m.matched.begin(), m.matched.end()}; }

// Oracle: the textbook loop. Take every remaining edge of the current
// minimum weight, then drop all edges touching their endpoints.
std::set<std::size_t> oracle_greedy(const Graph& g)
{
    std::vector<bool> alive(g.edges().size(), true);
    std::set<std::size_t> out;
    while (true) {
        std::optional<double> low;
        for (std::size_t e = 0; e < alive.size(); ++e) {
            if (alive[e] && (!low || g.edge(e).weight < *low)) {
                low = g.edge(e).weight;
            }
        }
        if (!low) {
            return out;
        }
        std::set<NodeId> used;
        for (std::size_t e = 0; e < alive.size(); ++e) {
            if (alive[e] && g.edge(e).weight == *low) {
                out.insert(e);
                used.insert(g.edge(e).u);
                used.insert(g.edge(e).v);
            }
        }
        for (std::size_t e = 0; e < alive.size(); ++e) {
            if (used.contains(g.edge(e).u) || used.contains(g.edge(e).v)) {
                alive[e] = false;
            }
        }
    }
}

// Oracle: every edge subset that forms a simple path or cycle whose edges
// alternate matched/unmatched and whose saturated vertices are saturated
// by one of its own edges.
std::set<std::vector<std::size_t>> oracle_maximal_paths(const Graph& g, const Matching<double>& m)
{
    std::set<std::vector<std::size_t>> out;
    const std::size_t n_edges = g.edges().size();
    for (std::uint32_t mask = 1; mask < (1u << n_edges); ++mask) {
        std::vector<std::size_t> es;
        std::map<NodeId, std::vector<std::size_t>> at;
        for (std::size_t e = 0; e < n_edges; ++e) {
            if (mask >> e & 1) {
                es.push_back(e);
                at[g.edge(e).u].push_back(e);
                at[g.edge(e).v].push_back(e);
            }
        }
        bool ok = true;
        std::size_t ends = 0;
        for (const auto& [v, inc] : at) {
            if (inc.size() > 2) {
                ok = false;
            }
            if (inc.size() == 1) {
                ++ends;
            }
            if (inc.size() == 2 && m.contains(inc[0]) == m.contains(inc[1])) {
                ok = false;  // two matched or two unmatched edges meet
            }
            if (m.mate[v] && std::find(es.begin(), es.end(), *m.mate[v]) == es.end()) {
                ok = false;  // saturated from outside
            }
        }
        if (!ok || (ends != 0 && ends != 2)) {
            continue;
        }
        // Connected?
        std::set<std::size_t> seen{es.front()};
        std::vector<std::size_t> stack{es.front()};
        while (!stack.empty()) {
            const std::size_t e = stack.back();
            stack.pop_back();
            for (NodeId x : {g.edge(e).u, g.edge(e).v}) {
                for (std::size_t f : at[x]) {
                    if (seen.insert(f).second) {
                        stack.push_back(f);
                    }
                }
            }
        }
        if (seen.size() == es.size()) {
            out.insert(es);
        }
    }
    return out;
}

} // namespace

TEST_CASE("greedy matching on small paths")
{
    CHECK(matched_set(greedy_match(path_graph({1, 2, 3}))) == std::set<std::size_t>{0, 2});
    CHECK(matched_set(greedy_match(path_graph({2, 1, 3}))) == std::set<std::size_t>{1});
    CHECK(matched_set(greedy_match(path_graph({7}))) == std::set<std::size_t>{0});
}

TEST_CASE("equal non-adjacent minimum edges are matched together")
{
    // e01 = 1, e12 = 5, e23 = 1: both weight-1 edges go in the first round.
    CHECK(matched_set(greedy_match(path_graph({1, 5, 1}))) == std::set<std::size_t>{0, 2});
}

TEST_CASE("adjacent ties are rejected")
{
    try {
        greedy_match(path_graph({1, 1}));
        FAIL("expected AdjacentTie");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AdjacentTie);
    }
}

TEST_CASE("graph validation")
{
    CHECK_THROWS_AS(Graph({0, 1}, {{0, 0, 1.0}}), Error);
    CHECK_THROWS_AS(Graph({0, 1}, {{0, 2, 1.0}}), Error);
    CHECK_THROWS_AS(Graph({0, 1}, {{0, 1, 1.0}, {1, 0, 2.0}}), Error);
}

TEST_CASE("saturation and threshold subgraphs on a path")
{
    const auto g = path_graph({1, 2, 3});
    const auto m = greedy_match(g);
    CHECK(m.saturation[0] == 1.0);
    CHECK(m.saturation[3] == 3.0);

    const auto g3 = threshold_subgraph(g, m, Threshold<double>::at(3.0));
    CHECK(g3.vertices() == std::vector<NodeId>{2, 3});
    CHECK(g3.edges().size() == 1);
    CHECK(g3.find_edge(2, 3).has_value());

    CHECK(threshold_subgraph(g, m, Threshold<double>::minus_infinity()).edges().size() == 3);
    const auto unsaturated = threshold_subgraph(g, m, Threshold<double>::plus_infinity());
    CHECK(unsaturated.vertices().empty());
    CHECK(unsaturated.edges().empty());
}

TEST_CASE("maximal alternating paths on hand-made examples")
{
    // A single matched edge.
    {
        const auto g = path_graph({4});
        const auto m = greedy_match(g);
        const auto paths = enumerate_maximal_alternating_paths(g, m, 4);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].edges == std::vector<std::size_t>{0});
    }
    // e01 ∈ M, e12 ∉ M, e23 ∈ M: the whole path is maximal.
    {
        const auto g = path_graph({1, 2, 3});
        const auto m = greedy_match(g);
        const auto paths = enumerate_maximal_alternating_paths(g, m, 4);
        const bool found = std::any_of(paths.begin(), paths.end(), [](const AlternatingPath& p) {
            return p.edges == std::vector<std::size_t>{0, 1, 2};
        });
        CHECK(found);
    }
}

TEST_CASE("greedy matching agrees with the textbook loop on random graphs")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto g = generate_random_graph(seed, 12);
        REQUIRE_FALSE(g.find_adjacent_tie());
        REQUIRE(matched_set(greedy_match(g)) == oracle_greedy(g));
    }
}

TEST_CASE("alternating path enumeration agrees with subset search")
{
    std::size_t compared = 0;
    for (std::uint64_t seed = 0; seed < 400 && compared < 100; ++seed) {
        const auto g = generate_random_graph(seed, 8);
        if (g.edges().size() > 14) {
            continue;
        }
        const auto m = greedy_match(g);
        std::set<std::vector<std::size_t>> found;
        for (const auto& p : enumerate_maximal_alternating_paths(g, m, g.edges().size())) {
            auto es = p.edges;
            std::sort(es.begin(), es.end());
            REQUIRE(found.insert(es).second);  // each path once
        }
        REQUIRE(found == oracle_maximal_paths(g, m));
        ++compared;
    }
    CHECK(compared >= 50);
}

TEST_CASE("minimum-weight edges of maximal alternating paths are matched")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = generate_random_graph(seed, 12);
        const auto m = greedy_match(g);
        for (const auto& p : enumerate_maximal_alternating_paths(g, m, g.edges().size())) {
            for (std::size_t e : p.min_edges) {
                REQUIRE(m.contains(e));
            }
            // An unmatched edge between two unsaturated vertices never occurs.
            if (p.edges.size() == 1) {
                REQUIRE(m.contains(p.edges[0]));
            }
        }
    }
}

TEST_CASE("edges surviving in their own threshold subgraph are matched")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = generate_random_graph(seed, 12);
        const auto m = greedy_match(g);
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            const auto& edge = g.edge(e);
            const auto sub = threshold_subgraph(g, m, Threshold<double>::at(edge.weight));
            if (sub.find_edge(edge.u, edge.v)) {
                REQUIRE(m.contains(e));
            }
        }
    }
}
