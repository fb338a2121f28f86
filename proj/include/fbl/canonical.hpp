#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fbl/expr.hpp"
#include "fbl/rational.hpp"

namespace fbl {

/// xi -> sum_k coeffs[k] * xi_k
struct LinearForm {
  std::vector<Rational> coeffs;

  Rational operator()(const Point& xi) const { return dot(coeffs, xi); }
  bool is_zero() const;

  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.coeffs == b.coeffs; }
  friend bool operator<(const LinearForm& a, const LinearForm& b) {
    return lex_less(a.coeffs, b.coeffs);
  }
};

/// Configurable size guards. These bound work, they do not change results.
struct Limits {
  std::size_t max_forms = 4096;
  std::size_t max_hyperplanes = 24;
};

/// The function xi -> max_i min_j groups[i][j](xi).
///
/// Groups are kept sorted and duplicate-free, and no group is a superset of
/// another (such a group can never be the maximum).
struct MaxMinForm {
  std::size_t n = 0;
  std::vector<std::vector<LinearForm>> groups;

  Rational operator()(const Point& xi) const;
  std::size_t form_count() const;
  /// Distinct forms across all groups, sorted.
  std::vector<LinearForm> distinct_forms() const;
};

/// Rewrites a term into max-min normal form. Throws CapExceeded once the total
/// number of forms would pass limits.max_forms.
MaxMinForm to_maxmin(const Expr& f, const Limits& limits = {});

/// A maximal face {xi : xi_axis = sign} of the cube, axis 0-based.
struct Face {
  std::size_t axis = 0;
  int sign = 1;
};

/// Open polyhedral cone on which the max-min form is linear.
struct Cell {
  std::vector<int> signs;  // +1/-1 for every hyperplane of the arrangement
  Point witness;           // strictly inside, scaled to sup-norm 1
  LinearForm active;       // the form equal to F on the whole cell
  /// Vertices of closure(cell) intersected with the cube boundary faces
  /// (or with the single requested face). The apex 0 is not listed.
  std::vector<Point> vertices;
};

struct CellDecomposition {
  std::size_t n = 0;
  /// Coordinate hyperplanes e_1..e_n first, then the normalised pairwise
  /// differences of the distinct forms in lexicographic order.
  std::vector<LinearForm> hyperplanes;
  std::vector<Cell> cells;  // sorted by sign vector
};

/// Normalised arrangement for F: coordinate hyperplanes plus the difference of
/// every pair of distinct forms, scaled so the first nonzero entry is 1.
std::vector<LinearForm> arrangement_hyperplanes(const MaxMinForm& F);

/// Enumerates the cells of the arrangement by depth-first sign-vector search
/// against the vertices of the face arrangements, then attaches each cell's
/// boundary vertices. Throws CapExceeded when the arrangement has more than
/// limits.max_hyperplanes hyperplanes.
CellDecomposition enumerate_cells(const MaxMinForm& F, std::optional<Face> restrict = std::nullopt,
                                  const Limits& limits = {}, bool parallel = true);

/// Maximal connected unions of cells sharing one active form: the pieces on
/// which F is a single linear function. Cells are adjacent when their sign
/// vectors differ in exactly one hyperplane.
struct LinearityRegion {
  LinearForm active;
  std::vector<std::size_t> cells;  // indices into CellDecomposition::cells
};

std::vector<LinearityRegion> linearity_regions(const CellDecomposition& decomposition);

/// Arrangement vertices lying on one face of the cube: the points of the face
/// where n-1 independent constraints (hyperplanes or cube facets) are tight.
/// Sorted and unique.
std::vector<Point> face_vertices(const std::vector<LinearForm>& hyperplanes, std::size_t n,
                                 const Face& face);

struct ZeroTest {
  bool zero = true;
  std::optional<Point> witness;  // set when !zero: a point where f != 0
};

ZeroTest semantic_zero_test(const Expr& f, const Limits& limits = {});
bool is_semantically_zero(const Expr& f, const Limits& limits = {});
bool semantically_equal(const Expr& a, const Expr& b, const Limits& limits = {});

struct SupNormResult {
  Rational value;
  Point witness;  // lexicographically smallest vertex attaining the max (empty if value 0 and n == 0)
};

/// max over the cube of |f|, exact.
SupNormResult sup_norm(const Expr& f, const Limits& limits = {});

}  // namespace fbl
