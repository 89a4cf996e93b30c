#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bgg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num/den", "num" or a terminating decimal such as "0.25".
Rational parse_rational(std::string_view text);

/// Canonical rendering: "n" for integers, "n/d" otherwise (lowest terms, d > 0).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

}  // namespace bgg
