#include "greedy_morse/ordered_value.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

using namespace greedy_morse;

namespace {

// Oracle: list both sets in descending order and compare position by
// position; the larger element at the first difference wins, and a proper
// prefix (a set that runs out first) is the greater set.
int oracle_lex(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) {
            return a[i] > b[i] ? 1 : -1;
        }
    }
    if (a.size() == b.size()) {
        return 0;
    }
    return a.size() < b.size() ? 1 : -1;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

OrderedValue values(std::vector<double> xs) { return OrderedValue::set_of_scalars(xs); }

std::vector<double> subset_of(std::uint32_t mask)
{
    std::vector<double> out;
    for (int i = 0; i < 5; ++i) {
        if (mask >> i & 1) {
            out.push_back(i + 1.0);
        }
    }
    return out;
}

} // namespace

TEST_CASE("triangle faces sort a > ab > abc > ac > b > bc > c")
{
    const double a = 3;
    const double b = 2;
    const double c = 1;
    const std::vector<OrderedValue> ascending{values({c}),       values({b, c}), values({b}), values({a, c}),
                                              values({a, b, c}), values({a, b}), values({a})};
    std::vector<OrderedValue> faces{ascending[4], ascending[0], ascending[6], ascending[2],
                                    ascending[5], ascending[3], ascending[1]};
    std::sort(faces.begin(), faces.end());
    REQUIRE(faces == ascending);
    for (std::size_t i = 0; i + 1 < ascending.size(); ++i) {
        CHECK(lex_compare(ascending[i], ascending[i + 1]) < 0);
    }
}

TEST_CASE("lex comparison clauses")
{
    // A ⊂ B: A > B exactly when min(A) > max(B \ A).
    CHECK(lex_compare(values({3}), values({2, 3})) > 0);
    CHECK(lex_compare(values({1}), values({1, 2})) < 0);
    // Otherwise the set holding max(A Δ B) is larger.
    CHECK(lex_compare(values({1, 4}), values({2, 3})) > 0);
    CHECK(lex_compare(values({2, 3}), values({1, 3})) > 0);
    CHECK(lex_compare(values({1, 2}), values({1, 2})) == 0);
}

TEST_CASE("lex order over all subsets of five values agrees with the descending-sequence oracle")
{
    for (std::uint32_t x = 1; x < 32; ++x) {
        for (std::uint32_t y = 1; y < 32; ++y) {
            const auto ax = subset_of(x);
            const auto ay = subset_of(y);
            const int want = oracle_lex(ax, ay);
            INFO("masks " << x << " " << y);
            REQUIRE(sign(lex_compare(values(ax), values(ay))) == want);
            // Bit i stands for value i + 1, so masks compare the same way.
            REQUIRE(sign(lex_compare_bits(x, y)) == want);
        }
    }
}

TEST_CASE("lex order is a strict total order on non-empty subsets")
{
    std::vector<OrderedValue> all;
    for (std::uint32_t x = 1; x < 32; ++x) {
        all.push_back(values(subset_of(x)));
    }
    for (const auto& p : all) {
        for (const auto& q : all) {
            CHECK((compare(p, q) == 0) == (p == q));
            CHECK(sign(compare(p, q)) == -sign(compare(q, p)));
            for (const auto& r : all) {
                if (compare(p, q) < 0 && compare(q, r) < 0) {
                    CHECK(compare(p, r) < 0);
                }
            }
        }
    }
}

TEST_CASE("shortlex compares size first")
{
    CHECK(shortlex_compare(values({5}), values({1, 2})) < 0);
    CHECK(shortlex_compare(values({1, 3}), values({2, 3})) < 0);
    CHECK(shortlex_compare(values({2, 3}), values({2, 3})) == 0);
    for (std::uint32_t x = 0; x < 32; ++x) {
        for (std::uint32_t y = 0; y < 32; ++y) {
            const int size_x = std::popcount(x);
            const int size_y = std::popcount(y);
            const int want = size_x != size_y ? (size_x < size_y ? -1 : 1) : oracle_lex(subset_of(x), subset_of(y));
            REQUIRE(sign(shortlex_compare_bits(x, y)) == want);
        }
    }
}

TEST_CASE("empty set is greater than every non-empty set under lex")
{
    CHECK(lex_compare_bits(0, 1) > 0);
    CHECK(lex_compare_bits(0, 0b11111) > 0);
    CHECK(lex_compare_bits(0, 0) == 0);
    CHECK(shortlex_compare_bits(0, 1) < 0);
}

TEST_CASE("nested value sets compare by lex order of their elements")
{
    const OrderedValue low = OrderedValue::set({values({1}), values({1, 2})});
    const OrderedValue high = OrderedValue::set({values({2})});
    // Descending: high = [{2}], low = [{1}, {1,2}] sorted as {1} > {1,2}.
    CHECK(compare(values({2}), values({1})) > 0);
    CHECK(compare(high, low) > 0);
    CHECK(high.depth() == 2);
}

TEST_CASE("scalars and sets, or sets of different depth, are incomparable")
{
    const OrderedValue scalar(1.0);
    const OrderedValue flat = values({1, 2});
    const OrderedValue nested = OrderedValue::set({flat});
    try {
        (void)compare(scalar, flat);
        FAIL("expected IncomparableDepth");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IncomparableDepth);
    }
    CHECK_THROWS_AS(compare(flat, nested), Error);
    CHECK_THROWS_AS(OrderedValue::set({scalar, flat}), Error);
    CHECK_THROWS_AS(OrderedValue::set({OrderedValue::set({}), scalar}), Error);
}

TEST_CASE("sets deduplicate and print in ascending order")
{
    const OrderedValue v = values({3, 1, 3, 2});
    CHECK(v.size() == 3);
    CHECK(v.to_string() == "{1, 2, 3}");
    CHECK(OrderedValue(2.5).to_string() == "2.5");
}
