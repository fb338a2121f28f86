#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>

#include "fbl/rational.hpp"

namespace fbl {

enum class NodeKind { Zero, Generator, Scale, Sum, Neg, Join, Meet, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One node of a lattice-linear term. Immutable once built; subtrees are shared.
struct Node {
  NodeKind kind;
  std::size_t index = 0;  // Generator: 1-based generator number
  Rational coeff;         // Scale: the scalar
  NodePtr left;           // unary child, or left operand
  NodePtr right;          // right operand of Sum / Join / Meet
};

/// Element of the free vector lattice over n generators, held as a term tree.
///
/// Every tree carries its generator count n; binary operations require both
/// operands to agree on n and throw DimensionError otherwise.
class Expr {
 public:
  static Expr zero(std::size_t n);
  /// Generator x_k, 1 <= k <= n.
  static Expr generator(std::size_t n, std::size_t k);

  static Expr scale(const Rational& c, const Expr& e);
  static Expr sum(const Expr& a, const Expr& b);
  static Expr neg(const Expr& e);
  static Expr join(const Expr& a, const Expr& b);
  static Expr meet(const Expr& a, const Expr& b);
  static Expr abs(const Expr& e);

  /// Positive part e v 0.
  static Expr pos(const Expr& e);

  std::size_t arity() const noexcept { return n_; }
  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// Wraps an existing node; validates generator indices against n.
  Expr(std::size_t n, NodePtr root);

 private:
  std::size_t n_;
  NodePtr root_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::sum(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::sum(a, Expr::neg(b)); }
inline Expr operator-(const Expr& a) { return Expr::neg(a); }
inline Expr operator*(const Rational& c, const Expr& e) { return Expr::scale(c, e); }

/// Exact value f(xi). Throws DimensionError when xi has the wrong length.
Rational eval(const Expr& f, const Point& xi);

/// P_B f: every generator outside `keep` (1-based) is replaced by Zero.
/// Throws DomainError on an empty or out-of-range set.
Expr project_onto(const Expr& f, const std::set<std::size_t>& keep);

bool structurally_equal(const Expr& a, const Expr& b);

std::size_t depth(const Expr& e);
std::size_t node_count(const Expr& e);

/// Prints in the ASCII grammar accepted by parse_expr; parse(print(e)) is
/// structurally equal to e.
std::string to_string(const Expr& e);

}  // namespace fbl
