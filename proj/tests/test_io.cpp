#include "greedy_morse/io.hpp"
#include "greedy_morse/random.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

using namespace greedy_morse;

namespace {

ComplexInput from_off(const std::string& off, const std::string& scalars)
{
    std::istringstream a(off);
    std::istringstream b(scalars);
    return complex_input_from_off(a, b);
}

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidInput;
}

} // namespace

TEST_CASE("complex JSON round trip")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto k = generate_random_complex(seed, 12, 3);
        const auto text = complex_to_json(k).dump();
        const auto back = build_simplicial(complex_input_from_json(parse_json_text(text)));
        REQUIRE(back.simplices() == k.simplices());
        REQUIRE(back.valuation() == k.valuation());
    }
}

TEST_CASE("nested values survive a round trip through a subdivision")
{
    const auto path = build_simplicial(load_complex_input(std::string(SAMPLES_DIR) + "/path.json"));
    const auto sub = barycentric_subdivide(path);
    const Json j = subdivision_to_json(sub);
    CHECK(j.at("barycenters").size() == path.size());
    const auto back = build_simplicial(complex_input_from_json(j));
    CHECK(back.valuation() == sub.complex.valuation());
    CHECK(back.simplices() == sub.complex.simplices());

    CHECK(value_from_json(Json::parse("[[1, 2], [3]]")) ==
          OrderedValue::set({OrderedValue::set({OrderedValue(1.0), OrderedValue(2.0)}),
                             OrderedValue::set({OrderedValue(3.0)})}));
    // Sets come back in ascending order.
    CHECK(value_to_json(value_from_json(Json::parse("[2, 1]"))) == Json::parse("[1.0, 2.0]"));
    CHECK(kind_of([] { value_from_json(Json::parse("[[1, 2], 3]")); }) == ErrorKind::IncomparableDepth);
}

TEST_CASE("complex JSON errors")
{
    CHECK(kind_of([] { parse_json_text("{\"vertices\": ["); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { complex_input_from_json(Json::parse(R"({"simplices": [[0]]})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              complex_input_from_json(
                  Json::parse(R"({"vertices": [{"id": 0, "f": 1}], "simplices": [], "cells": []})"));
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              complex_input_from_json(Json::parse(R"({"vertices": [{"id": 0, "f": "x"}], "simplices": []})"));
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              complex_input_from_json(
                  Json::parse(R"({"vertices": [{"id": 0, "f": 1}, {"id": 0, "f": 2}], "simplices": []})"));
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_complex_input("/nonexistent/complex.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("OFF meshes")
{
    const auto tet = load_complex_input(std::string(SAMPLES_DIR) + "/tetrahedron.off",
                                        std::string(SAMPLES_DIR) + "/tetrahedron.scalars");
    CHECK_FALSE(tet.polyhedral);
    const auto k = build_simplicial(tet);
    CHECK(k.count_by_dim() == std::vector<std::size_t>{4, 6, 4});
    CHECK(k.euler_characteristic() == 2);
    CHECK(k.value(0) == OrderedValue(0.3));

    // Face colours after the vertex list are ignored; comments are skipped.
    const auto coloured = from_off("OFF\n# a triangle\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2 255 0 0\n", "1 2 3");
    CHECK(coloured.cells == std::vector<std::vector<VertexId>>{{0, 1, 2}});

    const auto quad = from_off("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n", "1 2 4 3");
    CHECK(quad.polyhedral);
    const auto square = PolyhedralComplex::build(quad.cells, quad.valuation);
    CHECK(square.size() == 9);
    CHECK(square.euler_characteristic() == 1);

    CHECK(kind_of([] { from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", "1 2"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", "1 2 3"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { from_off("PLY\n", ""); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", "1 2 x"); }) ==
          ErrorKind::ParseError);
}

TEST_CASE("poset JSON")
{
    const auto p = pip_from_json(parse_json_text(read_text(std::string(SAMPLES_DIR) + "/antichain_inconsistent.json")));
    CHECK(p.elements == std::vector<std::string>{"p", "q", "r"});
    CHECK(p.inconsistent == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(pip_from_json(pip_to_json(p)).inconsistent == p.inconsistent);

    CHECK(kind_of([] { pip_from_json(Json::parse(R"({"elements": ["a"], "covers": [["a", "z"]]})")); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { pip_from_json(Json::parse(R"({"elements": ["a", "a"]})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { pip_from_json(Json::parse(R"({"elements": ["a", "b"], "covers": [["a"]]})")); }) ==
          ErrorKind::ParseError);
}

TEST_CASE("reports are deterministic")
{
    const auto k = build_simplicial(load_complex_input(std::string(SAMPLES_DIR) + "/two_triangles.json"));
    const auto a = gradient_report(k, compute_gradient(k), true).dump();
    const auto b = gradient_report(k, compute_gradient(k), true).dump();
    CHECK(a == b);
    const auto report = parse_json_text(a);
    CHECK(report.at("critical") == Json::parse("[[0]]"));
    CHECK(report.at("pairs").size() == 5);

    const auto h = build_hasse(k);
    const auto v = compute_gradient(k);
    const auto dot = hasse_to_dot(
        h, &v, [&k](CellId c) { return k.simplex(c).to_string(); },
        [](const OrderedValue& w) { return w.to_string(); });
    CHECK(dot.rfind("digraph hasse {", 0) == 0);
    CHECK(dot.find("style=bold") != std::string::npos);
    CHECK(dot_quote("a\"b") == "\"a\\\"b\"");
}
