#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fbl/fdlattice.hpp"

namespace fbl {

/// Chooses preimages under a quotient map Q : X -> X/J.
///
/// preimage() guarantees Q x = y exactly, x >= 0 whenever y >= 0, and x <= cap
/// when a cap with Q cap >= y is supplied (the cap is applied by a meet, which
/// keeps the image because Q is a lattice homomorphism).
class PreimageOracle {
 public:
  virtual ~PreimageOracle() = default;

  /// slack bounds how far ||x|| may exceed ||y||; strategies may ignore it.
  Vector preimage(const Quotient& q, const Vector& y, const std::optional<Vector>& cap = std::nullopt,
                  const std::optional<Rational>& slack = std::nullopt);

  virtual std::string name() const = 0;
  /// Slack used when a call does not request one.
  virtual Rational default_slack() const { return 0; }

 protected:
  /// Any x with Q x = y, x >= 0 when y >= 0, ||x|| <= ||y|| + slack.
  virtual Vector choose(const Quotient& q, const Vector& y, const Rational& slack) = 0;
};

/// Zero on the ideal: the smallest positive preimage.
class CanonicalOracle : public PreimageOracle {
 public:
  std::string name() const override { return "canonical"; }

 protected:
  Vector choose(const Quotient& q, const Vector& y, const Rational& slack) override;
};

/// Zero padding plus seeded nonnegative noise on the ideal coordinates, scaled
/// so its norm is at most the slack (default_slack when none is requested).
class AdversarialOracle : public PreimageOracle {
 public:
  explicit AdversarialOracle(std::uint64_t seed, Rational default_slack = 1)
      : rng_(seed), seed_(seed), default_slack_(std::move(default_slack)) {}
  std::string name() const override { return "adversarial(" + std::to_string(seed_) + ")"; }
  Rational default_slack() const override { return default_slack_; }

 protected:
  Vector choose(const Quotient& q, const Vector& y, const Rational& slack) override;

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
  Rational default_slack_;
};

/// One step of the disjoint lifting induction.
struct LiftStep {
  Vector x_tilde;  // preimage of y_n, capped by the previous u
  Vector u_tilde;  // preimage of the tail z_{n+1}, capped by the previous u
  Vector meet;     // x_tilde /\ u_tilde, which Q sends to 0
  Vector x;        // x_tilde - meet
  Vector u;        // u_tilde - meet
};

struct DisjointLift {
  std::vector<Vector> xs;
  std::vector<LiftStep> trace;
};

/// Lifts pairwise disjoint nonnegative ys in X/J to pairwise disjoint
/// nonnegative xs in X with Q x_n = y_n.
///
/// Keeps a remainder u_n with Q u_n = y_{n+1} + ... + y_N disjoint from
/// x_1..x_n; each new pair of preimages is capped by u_n and made disjoint by
/// subtracting their meet.
/// Throws DomainError on negative, mis-sized or overlapping inputs.
DisjointLift lift_disjoint(const Quotient& q, const std::vector<Vector>& ys, PreimageOracle& oracle);

struct FamilyLift {
  std::vector<std::vector<Vector>> families;  // B_n, elementwise Q(B_n) = A_n
  std::vector<Vector> envelopes;              // v_n = sum_k a_k / (2^k r_k)
  std::vector<Vector> bands;                  // disjoint lifts u_n of the v_n
};

/// Lifts families A_1..A_N of nonnegative vectors, with every element of A_m
/// disjoint from every element of A_n (m != n), to families B_n that are
/// elementwise disjoint across n: b = c /\ (2^k r_k u_n) for a preimage c of
/// a = a_k in A_n, where r_k is a positive rational upper bound on ||a_k||.
/// Throws DomainError on negative, mis-sized or overlapping families.
FamilyLift lift_disjoint_families(const Quotient& q, const std::vector<std::vector<Vector>>& families,
                                  PreimageOracle& oracle);

struct ProjectiveLiftOptions {
  std::size_t max_net_points = 500000;
  bool parallel = true;
};

struct ProjectiveLift {
  LatticeHom S;             // P -> X with Q o S = T
  NormValue T_norm;         // ||T|| : P -> X/J
  NormValue S_norm;         // ||S|| : P -> X
  Rational K;               // sup of sum_k max(1, ||e_k||) x_k over the positive unit sphere of P
  Rational eps_net;         // min(eps, 1) / (1 + K (||T|| + 1)), with ||T|| rounded up
  Rational covering_bound;  // proven covering radius of the net, < eps_net
  std::size_t mesh = 0;
  std::size_t net_size = 0;
  std::vector<Vector> s;  // disjoint lifts of T e_k
  std::vector<Vector> t;  // near-norm preimages of T e_k
  std::vector<Vector> x;  // s_k /\ t_k^+
  std::vector<Vector> z;  // S e_k
};

/// The norm-controlled lifting of a lattice homomorphism T : P -> X/J out of
/// a finite-dimensional lattice P through Q, via disjoint lifts of T e_k cut
/// down by preimages of T p_i over a net {p_i} of the positive unit sphere.
///
/// Asserts Q o S = T exactly and ||S|| <= ||T|| + eps before returning (a
/// violation throws std::logic_error). Throws CapExceeded when the net would
/// exceed options.max_net_points, DomainError for eps <= 0 or mismatched maps.
ProjectiveLift projective_lift(const LatticeHom& T, const FdBanachLattice& P, const Quotient& q,
                               const Rational& eps, PreimageOracle& oracle,
                               const ProjectiveLiftOptions& options = {});

/// Net points on the positive unit sphere of P and their covering radius.
struct UnitNet {
  std::vector<Vector> points;  // nonnegative, nonzero, ||p|| <= 1
  std::size_t mesh = 0;
  Rational covering_bound;  // every positive unit vector is this close to some point
};

/// Smallest grid whose proven covering radius is below radius. Simplex grids
/// serve the l1-type norms, facet grids of the sup-norm sphere the rest.
UnitNet positive_unit_net(const FdBanachLattice& P, const Rational& radius, std::size_t max_points);

/// z_k = x_k /\ meet over i with points[i][k] > 0 of lifts[i] / points[i][k].
std::vector<Vector> net_meets_serial(const std::vector<Vector>& x, const std::vector<Vector>& points,
                                     const std::vector<Vector>& lifts);
/// Same values; each z_k is reduced by an OpenMP team. Meets are exact and
/// order-free, so the result does not depend on the schedule.
std::vector<Vector> net_meets_parallel(const std::vector<Vector>& x, const std::vector<Vector>& points,
                                       const std::vector<Vector>& lifts);

/// The constant K above, rounded up to a rational for lp.
Rational norm_comparison_constant(const FdBanachLattice& P);

}  // namespace fbl
