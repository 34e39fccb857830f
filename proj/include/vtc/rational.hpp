#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vtc {

// All geometric predicates in this project run on exact rationals; no
// floating point is used anywhere a decision is made.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

// Parses "p/q" or "p" (q > 0 after normalization). Returns nullopt on
// malformed input; callers report the location themselves.
std::optional<Rat> parse_fraction(const std::string& text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string format_fraction(const Rat& value);

using RationalPoint = std::vector<Rat>;

Rat dot(const RationalPoint& a, const RationalPoint& b);
Rat norm_squared(const RationalPoint& p);

}  // namespace vtc
