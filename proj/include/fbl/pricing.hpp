#pragma once

#include <cstddef>
#include <vector>

#include "fbl/canonical.hpp"
#include "fbl/rational.hpp"

namespace fbl {

/// Cell-by-cell view of |f| on the cube boundary, prepared once per function.
///
/// Vertices are stored once in lexicographic order, so a smaller id is a
/// lexicographically smaller point.
struct PricingProblem {
  struct CellView {
    LinearForm active;
    std::vector<std::size_t> vertex_ids;
  };

  std::size_t n = 0;
  std::vector<Point> vertices;
  std::vector<Rational> magnitude;             // |f(v)|
  std::vector<std::vector<Rational>> abs_coords;  // |v_k|
  std::vector<CellView> cells;

  static PricingProblem from_cells(const CellDecomposition& decomposition);
};

struct PricingResult {
  Rational violation;  // max over vertices of |f(v)| - sum_k y_k |v_k|
  std::size_t vertex = 0;
};

/// On each cell |f| is convex and sum_k y_k |xi_k| is linear, so the maximum
/// over a cell's boundary polytope sits at one of its vertices. Ties go to the
/// lexicographically smallest vertex.
PricingResult price_serial(const PricingProblem& problem, const std::vector<Rational>& prices);

/// Same result as price_serial; cells are scanned by an OpenMP team and
/// reduced with the same tie-break, so the answer is schedule-independent.
PricingResult price_parallel(const PricingProblem& problem, const std::vector<Rational>& prices);

}  // namespace fbl
