#pragma once

// Shared generators for the unit and acceptance suites.

#include <random>
#include <set>
#include <vector>

#include "fbl/expr.hpp"
#include "fbl/rational.hpp"

namespace fbl::testing {

class RandomExprs {
 public:
  explicit RandomExprs(std::uint64_t seed) : rng_(seed) {}

  /// Random term of depth at most max_depth over n generators.
  Expr expr(std::size_t n, std::size_t max_depth, double leaf_bias = 0.3) {
    if (max_depth <= 1 || unit() < leaf_bias) return leaf(n);
    const auto d = max_depth - 1;
    switch (pick(7)) {
      case 0:
        return Expr::scale(coefficient(), expr(n, d, leaf_bias));
      case 1:
        return expr(n, d, leaf_bias) + expr(n, d, leaf_bias);
      case 2:
        return expr(n, d, leaf_bias) - expr(n, d, leaf_bias);
      case 3:
        return Expr::join(expr(n, d, leaf_bias), expr(n, d, leaf_bias));
      case 4:
        return Expr::meet(expr(n, d, leaf_bias), expr(n, d, leaf_bias));
      case 5:
        return Expr::abs(expr(n, d, leaf_bias));
      default:
        return -expr(n, d, leaf_bias);
    }
  }

  Expr leaf(std::size_t n) {
    if (unit() < 0.05) return Expr::zero(n);
    return Expr::generator(n, 1 + pick(n));
  }

  Rational coefficient() {
    static const Rational choices[] = {Rational(1, 2), Rational(2), Rational(3), Rational(-1),
                                       Rational(1, 3), Rational(-2), Rational(3, 2)};
    return choices[pick(7)];
  }

  /// Rational point with small numerators and denominators.
  Point point(std::size_t n, int span = 6) {
    Point p(n);
    for (auto& c : p) {
      std::uniform_int_distribution<int> num(-span, span), den(1, 5);
      c = Rational(num(rng_), den(rng_));
      c.canonicalize();
    }
    return p;
  }

  /// Random point of the cube boundary: one coordinate fixed to +-1.
  Point boundary_point(std::size_t n) {
    Point p(n);
    for (auto& c : p) {
      std::uniform_int_distribution<int> num(-4, 4);
      c = Rational(num(rng_), 4);
      c.canonicalize();
    }
    p[pick(n)] = unit() < 0.5 ? -1 : 1;
    return p;
  }

  Rational nonneg_rational(int max_num = 5, int max_den = 4) {
    std::uniform_int_distribution<int> num(0, max_num), den(1, max_den);
    Rational r(num(rng_), den(rng_));
    r.canonicalize();
    return r;
  }

  std::set<std::size_t> subset(std::size_t n) {
    std::set<std::size_t> s;
    while (s.empty())
      for (std::size_t k = 1; k <= n; ++k)
        if (unit() < 0.5) s.insert(k);
    return s;
  }

  std::size_t pick(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Vanishes on the cube boundary off the face xi_axis = sign (axis 1-based,
/// n >= 2) and is positive inside that face.
inline Expr face_cutoff(std::size_t n, std::size_t axis = 1, int sign = 1) {
  Expr others = Expr::zero(n);
  for (std::size_t k = 1; k <= n; ++k)
    if (k != axis) others = Expr::join(others, Expr::abs(Expr::generator(n, k)));
  Expr x = Expr::generator(n, axis);
  return Expr::pos((sign > 0 ? x : -x) - others);
}

/// g truncated to the band [-cut, cut]: supported where cut is.
inline Expr clip(const Expr& g, const Expr& cut) {
  return Expr::meet(Expr::pos(g), cut) - Expr::meet(Expr::pos(-g), cut);
}

}  // namespace fbl::testing
