#pragma once

// Totally ordered vertex labels and the lexicographic / shortlex orders on
// finite sets of them.
//
// The lex order on sets: if A is a proper subset of B then A > B exactly when
// min(A) > max(B \ A); otherwise A > B exactly when the maximum of the
// symmetric difference lies in A. Equivalently, sort both sets in descending
// order and compare element-wise: the larger element at the first difference
// wins, and a proper prefix is the greater set.

#include "errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace greedy_morse {

/// Lex comparison of two strictly ascending ranges under a three-way
/// comparator. Implements the subset clause and the symmetric-difference
/// clause directly. An empty set has min = +inf, so it is greater than any
/// non-empty set.
template <class T, class Compare3>
std::strong_ordering lex_compare_sorted(std::span<const T> a, std::span<const T> b, Compare3&& cmp)
{
    const T* max_a_only = nullptr;
    const T* max_b_only = nullptr;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const std::strong_ordering c = cmp(a[i], b[j]);
        if (c == 0) {
            ++i;
            ++j;
        } else if (c < 0) {
            max_a_only = &a[i++];
        } else {
            max_b_only = &b[j++];
        }
    }
    if (i < a.size()) {
        max_a_only = &a.back();
    }
    if (j < b.size()) {
        max_b_only = &b.back();
    }

    if (max_a_only == nullptr && max_b_only == nullptr) {
        return std::strong_ordering::equal;
    }
    if (max_a_only == nullptr) {
        // a is a proper subset of b
        const bool a_greater = a.empty() || cmp(a.front(), *max_b_only) > 0;
        return a_greater ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (max_b_only == nullptr) {
        const bool b_greater = b.empty() || cmp(b.front(), *max_a_only) > 0;
        return b_greater ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return cmp(*max_a_only, *max_b_only) > 0 ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
}

template <class T, class Compare3>
std::strong_ordering shortlex_compare_sorted(std::span<const T> a, std::span<const T> b, Compare3&& cmp)
{
    if (a.size() != b.size()) {
        return a.size() <=> b.size();
    }
    return lex_compare_sorted(a, b, std::forward<Compare3>(cmp));
}

/// A recursively nested label: either a real scalar or a finite set of
/// labels of one common depth. Subdividing a complex turns scalar vertex
/// values into sets, subdividing again into sets of sets, and so on.
class OrderedValue {
public:
    OrderedValue() = default;

    OrderedValue(double scalar)
        : repr_(scalar)
    {
        if (std::isnan(scalar)) {
            throw Error(ErrorKind::InvalidInput, "NaN is not an ordered value");
        }
    }

    static OrderedValue set(std::vector<OrderedValue> elements)
    {
        int depth = -1;
        bool has_empty_set = false;
        for (const OrderedValue& e : elements) {
            if (e.is_scalar() || !e.elements().empty()) {
                const int d = e.depth();
                if (depth >= 0 && d != depth) {
                    throw Error(ErrorKind::IncomparableDepth, "set elements of mixed depth");
                }
                depth = d;
            } else {
                has_empty_set = true;
            }
        }
        if (has_empty_set && depth == 0) {
            throw Error(ErrorKind::IncomparableDepth, "empty set mixed with scalars");
        }
        std::sort(elements.begin(), elements.end(),
                  [](const OrderedValue& x, const OrderedValue& y) { return compare(x, y) < 0; });
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

        OrderedValue v;
        v.depth_ = elements.empty() ? 1 : 1 + std::max(depth, elements.front().depth_);
        v.repr_ = std::move(elements);
        return v;
    }

    static OrderedValue set_of_scalars(std::span<const double> values)
    {
        std::vector<OrderedValue> elements(values.begin(), values.end());
        return set(std::move(elements));
    }

    bool is_scalar() const noexcept { return std::holds_alternative<double>(repr_); }
    bool is_set() const noexcept { return !is_scalar(); }

    double scalar() const
    {
        if (!is_scalar()) {
            throw Error(ErrorKind::IncomparableDepth, "value is a set, not a scalar");
        }
        return std::get<double>(repr_);
    }

    const std::vector<OrderedValue>& elements() const
    {
        if (is_scalar()) {
            throw Error(ErrorKind::IncomparableDepth, "value is a scalar, not a set");
        }
        return std::get<std::vector<OrderedValue>>(repr_);
    }

    std::size_t size() const { return elements().size(); }

    /// 0 for scalars, 1 + element depth for sets (an empty set reports 1).
    int depth() const noexcept { return depth_; }

    friend std::strong_ordering compare(const OrderedValue& a, const OrderedValue& b)
    {
        if (a.is_scalar() && b.is_scalar()) {
            const double x = std::get<double>(a.repr_);
            const double y = std::get<double>(b.repr_);
            return x < y ? std::strong_ordering::less
                         : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        if (a.is_scalar() != b.is_scalar()) {
            throw Error(ErrorKind::IncomparableDepth, "cannot compare a scalar with a set");
        }
        const auto& ea = std::get<std::vector<OrderedValue>>(a.repr_);
        const auto& eb = std::get<std::vector<OrderedValue>>(b.repr_);
        if (!ea.empty() && !eb.empty() && a.depth_ != b.depth_) {
            throw Error(ErrorKind::IncomparableDepth,
                        "cannot compare sets of depth " + std::to_string(a.depth_) + " and " +
                            std::to_string(b.depth_));
        }
        return lex_compare_sorted(std::span<const OrderedValue>(ea), std::span<const OrderedValue>(eb),
                                  [](const OrderedValue& x, const OrderedValue& y) { return compare(x, y); });
    }

    friend std::strong_ordering operator<=>(const OrderedValue& a, const OrderedValue& b) { return compare(a, b); }
    friend bool operator==(const OrderedValue& a, const OrderedValue& b) { return compare(a, b) == 0; }

    std::string to_string() const
    {
        if (is_scalar()) {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(repr_));
            return std::string(buf, res.ptr);
        }
        std::string out = "{";
        const auto& es = std::get<std::vector<OrderedValue>>(repr_);
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += es[i].to_string();
        }
        return out + "}";
    }

private:
    std::variant<double, std::vector<OrderedValue>> repr_ = 0.0;
    int depth_ = 0;
};

struct OrderedValueLess {
    bool operator()(const OrderedValue& a, const OrderedValue& b) const { return compare(a, b) < 0; }
};

namespace detail {
inline void require_set(const OrderedValue& v)
{
    if (!v.is_set()) {
        throw Error(ErrorKind::IncomparableDepth, "lex order is defined on value sets");
    }
}
} // namespace detail

/// Lex order on value sets.
inline std::strong_ordering lex_compare(const OrderedValue& a, const OrderedValue& b)
{
    detail::require_set(a);
    detail::require_set(b);
    return compare(a, b);
}

/// Cardinality first (shorter is smaller), then lex order.
inline std::strong_ordering shortlex_compare(const OrderedValue& a, const OrderedValue& b)
{
    detail::require_set(a);
    detail::require_set(b);
    if (a.size() != b.size()) {
        return a.size() <=> b.size();
    }
    return compare(a, b);
}

// Bitmask variants: bit i stands for the value i. Used for ideals and marks
// of cubes, where the values are ranks in a linear order of poset elements.

inline std::strong_ordering lex_compare_bits(std::uint64_t a, std::uint64_t b)
{
    if (a == b) {
        return std::strong_ordering::equal;
    }
    const std::uint64_t a_only = a & ~b;
    const std::uint64_t b_only = b & ~a;
    auto top = [](std::uint64_t x) { return 63 - std::countl_zero(x); };
    if (a_only == 0) {
        const bool a_greater = a == 0 || std::countr_zero(a) > top(b_only);
        return a_greater ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (b_only == 0) {
        const bool b_greater = b == 0 || std::countr_zero(b) > top(a_only);
        return b_greater ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return top(a_only) > top(b_only) ? std::strong_ordering::greater : std::strong_ordering::less;
}

inline std::strong_ordering shortlex_compare_bits(std::uint64_t a, std::uint64_t b)
{
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    if (ca != cb) {
        return ca <=> cb;
    }
    return lex_compare_bits(a, b);
}

} // namespace greedy_morse
