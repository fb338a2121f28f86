#pragma once

#include <cstddef>
#include <vector>

#include "fbl/canonical.hpp"
#include "fbl/expr.hpp"
#include "fbl/rational.hpp"

namespace fbl {

struct Atom {
  Point point;
  Rational weight;
};

/// Finitely supported measure on the cube [-1, 1]^n with distinct atoms.
struct AtomicMeasure {
  std::size_t n = 0;
  std::vector<Atom> atoms;

  /// Throws DimensionError / DomainError unless every atom has n coordinates in
  /// [-1, 1] and no point repeats.
  void validate() const;
};

/// max_k sum_i |weight_i| |point_i(k)|, the dual free norm of the measure.
Rational dual_norm(const AtomicMeasure& mu);

/// Free norm of f together with a proof of optimality.
///
/// value == sum_i weight_i |f(point_i)| for the nonnegative primal measure,
/// which satisfies sum_i weight_i |point_i(k)| <= 1 for every k; and
/// value == sum_k prices_k, where |f(xi)| <= sum_k prices_k |xi_k| holds for
/// every xi. The second fact bounds phi(|f|) for every admissible positive
/// functional phi, the first shows the bound is reached.
struct NormCertificate {
  Rational value;
  AtomicMeasure primal;
  std::vector<Rational> prices;
  std::size_t iterations = 0;  // master LP solves
};

struct FreeNormOptions {
  Limits limits;
  std::size_t max_iterations = 100000;
  bool parallel = true;
};

/// Column generation: an exact master LP over a growing set of atoms, priced
/// against every vertex of the cell decomposition on the cube boundary.
/// Stops when no vertex violates the current dual prices.
NormCertificate free_norm(const Expr& f, const FreeNormOptions& options = {});

/// Rechecks all certificate conditions from scratch, including a fresh pricing
/// pass for global dual feasibility. Any failure, including a cap being hit
/// while rechecking, yields false.
bool verify_certificate(const Expr& f, const NormCertificate& certificate,
                        const Limits& limits = {});

/// Quotient norm modulo the ideal of functions vanishing on the finite set A of
/// points of the cube boundary:
///   max sum_{xi in A} lambda_xi |f(xi)|  s.t.  sum_xi lambda_xi |xi_k| <= 1, lambda >= 0.
/// Throws DomainError when A is empty or a point is off the boundary.
Rational quotient_norm(const Expr& f, const std::vector<Point>& A);

}  // namespace fbl
