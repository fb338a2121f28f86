#pragma once

#include <vector>

namespace fbl {

struct CircleAtom {
  double angle = 0;   // radians
  double weight = 0;  // >= 0
};

/// Atomic measure on the unit circle, the dual of FBL(2) in the circle model.
struct CircleMeasure {
  std::vector<CircleAtom> atoms;

  /// Throws DomainError on negative or non-finite weights, non-finite angles,
  /// or two atoms within 1e-12 of each other modulo 2 pi.
  void validate() const;
  /// Every angle shifted by t.
  CircleMeasure rotated(double t) const;
  CircleMeasure scaled(double c) const;
};

/// max(sum w |sin x|, sum w |cos x|).
double circle_dual_norm(const CircleMeasure& mu);

/// Average of circle_dual_norm over all rotations of mu.
///
/// On each arc between the angles where some rotated atom meets an axis, both
/// sums are of the form A sin t + B cos t; the arcs are split again where the
/// two sums cross and each piece is integrated in closed form. The result is
/// accurate to a few ulps of long double, so any tol >= 1e-12 is met.
/// Throws DomainError when tol <= 0 or mu is invalid.
double symmetric_norm(const CircleMeasure& mu, double tol = 1e-9);
/// Same pieces integrated in one thread.
double symmetric_norm_serial(const CircleMeasure& mu, double tol = 1e-9);

}  // namespace fbl
