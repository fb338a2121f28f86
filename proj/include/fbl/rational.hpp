#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace fbl {

/// Exact rational scalar. GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;

/// A point of R^n with rational coordinates.
using Point = std::vector<Rational>;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25" or "-1.5".
/// Throws std::invalid_argument on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

std::string to_string(const Point& p);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Largest |coordinate|; zero for the empty point.
Rational sup_norm(const Point& p);

/// Lexicographic comparison of equal-length points.
bool lex_less(const Point& a, const Point& b);

Rational dot(const std::vector<Rational>& a, const Point& b);

}  // namespace fbl
