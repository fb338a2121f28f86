#include "fbl/symnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fbl/errors.hpp"
#include "fbl/parallel.hpp"

namespace fbl {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;
constexpr long double kQuarter = std::numbers::pi_v<long double> / 2;

long double wrap(long double x) {
  x = std::fmod(x, kTwoPi);
  return x < 0 ? x + kTwoPi : x;
}

struct Atom {
  long double sin_x, cos_x, weight;
};

// A sin t + B cos t.
struct Wave {
  long double a = 0, b = 0;
  long double at(long double t) const { return a * std::sin(t) + b * std::cos(t); }
  long double integral(long double lo, long double hi) const {
    return a * (std::cos(lo) - std::cos(hi)) + b * (std::sin(hi) - std::sin(lo));
  }
};

std::vector<Atom> prepare(const CircleMeasure& mu, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  mu.validate();
  std::vector<Atom> atoms;
  for (const auto& atom : mu.atoms) {
    const long double x = wrap(atom.angle);
    atoms.push_back({std::sin(x), std::cos(x), atom.weight});
  }
  return atoms;
}

// Sorted cut points 0 = t_0 <= ... <= t_r = 2 pi where some x_i + t is a
// multiple of pi/2.
std::vector<long double> breakpoints(const CircleMeasure& mu) {
  std::vector<long double> cuts{0, kTwoPi};
  for (const auto& atom : mu.atoms)
    for (int k = 0; k < 4; ++k) cuts.push_back(wrap(k * kQuarter - wrap(atom.angle)));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

long double arc_integral(const std::vector<Atom>& atoms, long double lo, long double hi) {
  if (!(hi > lo)) return 0;
  const long double mid = (lo + hi) / 2;
  const long double sm = std::sin(mid), cm = std::cos(mid);
  // |sin(x+t)| and |cos(x+t)| keep their signs on the whole arc.
  Wave s, c;
  for (const auto& atom : atoms) {
    const long double sin_sign = atom.sin_x * cm + atom.cos_x * sm < 0 ? -1 : 1;
    const long double cos_sign = atom.cos_x * cm - atom.sin_x * sm < 0 ? -1 : 1;
    s.a += atom.weight * sin_sign * atom.cos_x;
    s.b += atom.weight * sin_sign * atom.sin_x;
    c.a -= atom.weight * cos_sign * atom.sin_x;
    c.b += atom.weight * cos_sign * atom.cos_x;
  }
  const Wave diff{s.a - c.a, s.b - c.b};
  std::vector<long double> cuts{lo};
  if (diff.a != 0 || diff.b != 0) {
    // diff = R sin(t + phi) vanishes at t = k pi - phi
    const long double phi = std::atan2(diff.b, diff.a);
    const long double pi = std::numbers::pi_v<long double>;
    for (long double k = std::ceil((lo + phi) / pi); k * pi - phi < hi; k += 1) {
      const long double root = k * pi - phi;
      if (root > lo) cuts.push_back(root);
    }
  }
  cuts.push_back(hi);
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double a = cuts[i], b = cuts[i + 1];
    const Wave& upper = diff.at((a + b) / 2) >= 0 ? s : c;
    total += upper.integral(a, b);
  }
  return total;
}

}  // namespace

void CircleMeasure::validate() const {
  std::vector<long double> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& atom = atoms[i];
    if (!std::isfinite(atom.angle)) throw DomainError("atom " + std::to_string(i + 1) + " has a non-finite angle");
    if (!std::isfinite(atom.weight) || atom.weight < 0)
      throw DomainError("atom " + std::to_string(i + 1) + " needs a finite nonnegative weight");
    seen.push_back(wrap(atom.angle));
  }
  std::sort(seen.begin(), seen.end());
  constexpr long double kSameAngle = 1e-12L;
  bool clash = seen.size() > 1 && seen.front() + kTwoPi - seen.back() < kSameAngle;
  for (std::size_t i = 1; i < seen.size(); ++i) clash = clash || seen[i] - seen[i - 1] < kSameAngle;
  if (clash) throw DomainError("two atoms share an angle modulo 2 pi");
}

CircleMeasure CircleMeasure::rotated(double t) const {
  CircleMeasure out = *this;
  for (auto& atom : out.atoms) atom.angle += t;
  return out;
}

CircleMeasure CircleMeasure::scaled(double c) const {
  CircleMeasure out = *this;
  for (auto& atom : out.atoms) atom.weight *= c;
  return out;
}

double circle_dual_norm(const CircleMeasure& mu) {
  mu.validate();
  long double s = 0, c = 0;
  for (const auto& atom : mu.atoms) {
    const long double x = wrap(atom.angle);
    s += atom.weight * std::fabs(std::sin(x));
    c += atom.weight * std::fabs(std::cos(x));
  }
  return static_cast<double>(std::max(s, c));
}

double symmetric_norm_serial(const CircleMeasure& mu, double tol) {
  const auto atoms = prepare(mu, tol);
  const auto cuts = breakpoints(mu);
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += arc_integral(atoms, cuts[i], cuts[i + 1]);
  return static_cast<double>(total / kTwoPi);
}

double symmetric_norm(const CircleMeasure& mu, double tol) {
  const auto atoms = prepare(mu, tol);
  const auto cuts = breakpoints(mu);
  const std::ptrdiff_t arcs = static_cast<std::ptrdiff_t>(cuts.size()) - 1;
  std::vector<long double> pieces(arcs);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < arcs; ++i) pieces[i] = arc_integral(atoms, cuts[i], cuts[i + 1]);
  long double total = 0;
  for (auto piece : pieces) total += piece;
  return static_cast<double>(total / kTwoPi);
}

}  // namespace fbl
