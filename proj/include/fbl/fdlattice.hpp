#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fbl/rational.hpp"

namespace fbl {

using Vector = std::vector<Rational>;

enum class NormKind { L1, LInf, Lp, WeightedL1, WeightedLInf };

/// A lattice norm on R^m with the coordinatewise order.
struct NormSpec {
  NormKind kind = NormKind::L1;
  Rational p = 1;                 // only for Lp, p > 1
  std::vector<Rational> weights;  // only for the weighted kinds, all > 0

  static NormSpec l1() { return {NormKind::L1, 1, {}}; }
  static NormSpec linf() { return {NormKind::LInf, 1, {}}; }
  static NormSpec lp(Rational p) { return {NormKind::Lp, std::move(p), {}}; }
  static NormSpec weighted_l1(std::vector<Rational> w) { return {NormKind::WeightedL1, 1, std::move(w)}; }
  static NormSpec weighted_linf(std::vector<Rational> w) {
    return {NormKind::WeightedLInf, 1, std::move(w)};
  }

  /// True when norms under this spec are rational for rational vectors.
  bool exact() const { return kind != NormKind::Lp; }
  bool l1_type() const { return kind == NormKind::L1 || kind == NormKind::WeightedL1; }
  bool linf_type() const { return kind == NormKind::LInf || kind == NormKind::WeightedLInf; }
  /// Weight of coordinate k; 1 for the unweighted kinds.
  Rational weight(std::size_t k) const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

std::string to_string(const NormSpec& spec);

struct FdBanachLattice {
  std::size_t dim = 1;
  NormSpec norm;

  /// Throws DimensionError / DomainError on dim 0, p <= 1, or bad weights.
  void validate() const;
  friend bool operator==(const FdBanachLattice&, const FdBanachLattice&) = default;
};

/// A norm value. Exact for the rational specs; otherwise an extended-precision
/// approximation with relative error far below 1e-12.
struct NormValue {
  long double approx = 0;
  std::optional<Rational> exact;

  /// A rational number >= the true value, equal to it when exact.
  Rational upper() const;
};

inline constexpr long double kLpTolerance = 1e-12L;

NormValue norm_vec(const Vector& x, const FdBanachLattice& space);

/// Coordinatewise lattice operations.
Vector vjoin(const Vector& a, const Vector& b);
Vector vmeet(const Vector& a, const Vector& b);
Vector vpos(const Vector& a);
Vector vadd(const Vector& a, const Vector& b);
Vector vsub(const Vector& a, const Vector& b);
Vector vscale(const Rational& c, const Vector& a);
bool vnonneg(const Vector& a);
bool vdisjoint(const Vector& a, const Vector& b);
bool vzero(const Vector& a);
bool vleq(const Vector& a, const Vector& b);

/// Output coordinate j reads scale * x[source] (0-based source).
struct HomRow {
  std::size_t source = 0;
  Rational scale;
  friend bool operator==(const HomRow&, const HomRow&) = default;
};

/// Lattice homomorphism R^domain_dim -> R^rows.size(). Every real lattice
/// homomorphism on a coordinate lattice is a nonnegative multiple of a
/// coordinate evaluation, so this representation is complete.
struct LatticeHom {
  std::size_t domain_dim = 0;
  std::vector<std::optional<HomRow>> rows;  // nullopt = zero row

  std::size_t codomain_dim() const { return rows.size(); }
  /// Throws DomainError on negative scales or sources out of range.
  void validate() const;
  static LatticeHom identity(std::size_t m);
  friend bool operator==(const LatticeHom&, const LatticeHom&) = default;
};

Vector apply_hom(const LatticeHom& T, const Vector& x);
/// outer after inner.
LatticeHom compose(const LatticeHom& outer, const LatticeHom& inner);
/// Equality as maps (zero-scale rows and zero rows coincide).
bool same_map(const LatticeHom& a, const LatticeHom& b);

/// Closed ideal spanned by the listed coordinates (1-based).
struct IdealSpec {
  std::set<std::size_t> coords;
};

struct Quotient {
  FdBanachLattice space;
  FdBanachLattice quotient_space;
  std::vector<std::size_t> kept;   // surviving coordinates of space, 0-based, increasing
  std::vector<std::size_t> ideal;  // ideal coordinates, 0-based, increasing
  LatticeHom map;                  // Q: drops ideal coordinates with scale 1

  /// The section y -> x with Qx = y and x = 0 on the ideal.
  Vector zero_pad(const Vector& y) const;
};

/// X / J. The supported norms are absolute and monotone, so the infimum
/// defining the quotient norm is attained by zeroing the ideal coordinates and
/// the quotient spec is the restriction to the kept ones.
/// Throws DomainError when J covers every coordinate or names a bad index.
Quotient quotient(const FdBanachLattice& space, const IdealSpec& J);

struct HomNorm {
  NormValue value;
  /// Nonnegative and nonzero with ||T witness|| / ||witness|| == value; on
  /// lp paths the witness is a rational approximation and the ratio agrees to
  /// within kLpTolerance.
  Vector witness;
};

/// Operator norm of T : dom -> cod, by closed forms per domain spec.
HomNorm hom_norm(const LatticeHom& T, const FdBanachLattice& dom, const FdBanachLattice& cod);

}  // namespace fbl
