#pragma once

#include <gmpxx.h>

#include <cctype>
#include <concepts>
#include <stdexcept>
#include <string>

namespace cfs {

/// Exact arbitrary-precision rational. Always kept in canonical form:
/// reduced, denominator positive.
using Rational = mpq_class;

/// Thrown on malformed input data and violated operation preconditions.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient ring for truncated series: exact rationals in the symbolic
/// core, doubles in the numeric harness.
template <typename R>
concept coefficient_ring = std::regular<R> && requires(R a, R b, int k) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { a / b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    R(k);
};

/// Parses an optional sign followed by an integer or "p/q". No whitespace,
/// denominator must be a positive integer literal.
inline Rational parse_rational(const std::string& text) {
    const auto fail = [&text]() -> void {
        throw validation_error("invalid rational '" + text + "' (expected integer or p/q)");
    };
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) fail();
    if (i != text.size()) {
        if (text[i] != '/') fail();
        ++i;
        digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++digits;
        }
        if (digits == 0 || i != text.size()) fail();
    }
    const std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational value(body);
    if (value.get_den() == 0) throw validation_error("zero denominator in '" + text + "'");
    value.canonicalize();
    return value;
}

/// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace cfs
