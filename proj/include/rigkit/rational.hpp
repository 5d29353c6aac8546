#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rigkit {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic for exponents and densities. All threshold
// comparisons in this library are strict inequalities between rationals and
// must never be decided by floating-point rounding.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt rational_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rational_den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Parses "a/b" or "a" with optional sign. Whitespace is not accepted.
std::optional<Rational> parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

// floor(base^(a/b)) for base >= 1 and a/b > 0, computed exactly as the
// integer b-th root of base^a.
BigInt floor_pow(BigInt base, const Rational& exponent);

}  // namespace rigkit
