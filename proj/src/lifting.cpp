#include "fbl/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fbl/errors.hpp"
#include "fbl/parallel.hpp"

namespace fbl {

namespace {

// Rational upper bound on ||v|| in X; ||v||_1 dominates every lp norm.
Rational norm_above(const Vector& v, const FdBanachLattice& X) {
  if (X.norm.exact()) return *norm_vec(v, X).exact;
  Rational total = 0;
  for (const auto& c : v) total += abs(c);
  return total;
}

void check_quotient_vector(const Quotient& q, const Vector& y, const std::string& what) {
  if (y.size() != q.quotient_space.dim)
    throw DomainError(what + " has " + std::to_string(y.size()) + " coordinates, the quotient has " +
                      std::to_string(q.quotient_space.dim));
}

Vector unit_vector(std::size_t dim, std::size_t k) {
  Vector e(dim, 0);
  e[k] = 1;
  return e;
}

Rational pow2(std::size_t k) {
  mpz_class z = 1;
  z <<= k;
  return Rational(z);
}

}  // namespace

Vector PreimageOracle::preimage(const Quotient& q, const Vector& y, const std::optional<Vector>& cap,
                                const std::optional<Rational>& slack) {
  check_quotient_vector(q, y, "preimage target");
  Vector x = choose(q, y, slack ? *slack : default_slack());
  if (cap) {
    if (cap->size() != q.space.dim) throw DimensionError("preimage cap has the wrong dimension");
    if (!vleq(y, apply_hom(q.map, *cap))) throw DomainError("preimage cap does not dominate the target");
    x = vmeet(x, *cap);
  }
  if (apply_hom(q.map, x) != y) throw std::logic_error(name() + " oracle returned a wrong preimage");
  return x;
}

Vector CanonicalOracle::choose(const Quotient& q, const Vector& y, const Rational&) { return q.zero_pad(y); }

Vector AdversarialOracle::choose(const Quotient& q, const Vector& y, const Rational& slack) {
  Vector x = q.zero_pad(y);
  if (q.ideal.empty() || sgn(slack) <= 0) return x;
  std::uniform_int_distribution<int> num(0, 4), den(1, 4);
  Vector noise(q.space.dim, 0);
  for (auto k : q.ideal) {
    noise[k] = Rational(num(rng_), den(rng_));
    noise[k].canonicalize();
  }
  Rational size = norm_above(noise, q.space);
  if (size > slack) noise = vscale(slack / size, noise);
  return vadd(x, noise);
}

DisjointLift lift_disjoint(const Quotient& q, const std::vector<Vector>& ys, PreimageOracle& oracle) {
  for (std::size_t i = 0; i < ys.size(); ++i) {
    check_quotient_vector(q, ys[i], "y_" + std::to_string(i + 1));
    if (!vnonneg(ys[i])) throw DomainError("y_" + std::to_string(i + 1) + " is not nonnegative");
    for (std::size_t j = 0; j < i; ++j)
      if (!vdisjoint(ys[i], ys[j]))
        throw DomainError("y_" + std::to_string(j + 1) + " and y_" + std::to_string(i + 1) +
                          " are not disjoint");
  }
  DisjointLift out;
  const std::size_t N = ys.size();
  if (N == 0) return out;

  // tails[n] = y_n + ... + y_{N-1}, tails[N] = 0
  std::vector<Vector> tails(N + 1, Vector(q.quotient_space.dim, 0));
  for (std::size_t n = N; n-- > 0;) tails[n] = vadd(tails[n + 1], ys[n]);

  std::optional<Vector> u;
  for (std::size_t n = 0; n < N; ++n) {
    LiftStep step;
    step.x_tilde = oracle.preimage(q, ys[n], u);
    step.u_tilde = oracle.preimage(q, tails[n + 1], u);
    step.meet = vmeet(step.x_tilde, step.u_tilde);
    step.x = vsub(step.x_tilde, step.meet);
    step.u = vsub(step.u_tilde, step.meet);
    u = step.u;
    out.xs.push_back(step.x);
    out.trace.push_back(std::move(step));
  }
  return out;
}

FamilyLift lift_disjoint_families(const Quotient& q, const std::vector<std::vector<Vector>>& families,
                                  PreimageOracle& oracle) {
  const std::size_t dim = q.quotient_space.dim;
  for (std::size_t n = 0; n < families.size(); ++n)
    for (std::size_t k = 0; k < families[n].size(); ++k) {
      const auto& a = families[n][k];
      const std::string label = "element " + std::to_string(k + 1) + " of family " + std::to_string(n + 1);
      check_quotient_vector(q, a, label);
      if (!vnonneg(a)) throw DomainError(label + " is not nonnegative");
      for (std::size_t m = 0; m < n; ++m)
        for (const auto& b : families[m])
          if (!vdisjoint(a, b))
            throw DomainError(label + " meets family " + std::to_string(m + 1));
    }

  FamilyLift out;
  std::vector<std::vector<Rational>> radii(families.size());
  for (std::size_t n = 0; n < families.size(); ++n) {
    Vector v(dim, 0);
    for (std::size_t k = 0; k < families[n].size(); ++k) {
      const auto& a = families[n][k];
      Rational r = norm_above(a, q.quotient_space);
      radii[n].push_back(r);
      if (sgn(r) > 0) v = vadd(v, vscale(1 / (pow2(k + 1) * r), a));
    }
    out.envelopes.push_back(std::move(v));
  }
  out.bands = lift_disjoint(q, out.envelopes, oracle).xs;

  for (std::size_t n = 0; n < families.size(); ++n) {
    std::vector<Vector> lifted;
    for (std::size_t k = 0; k < families[n].size(); ++k) {
      const auto& a = families[n][k];
      if (vzero(a)) {
        lifted.emplace_back(q.space.dim, 0);
        continue;
      }
      // 0 <= a <= 2^k r v_n, so the cap keeps the image.
      Vector c = oracle.preimage(q, a);
      lifted.push_back(vmeet(c, vscale(pow2(k + 1) * radii[n][k], out.bands[n])));
    }
    out.families.push_back(std::move(lifted));
  }
  return out;
}

Rational norm_comparison_constant(const FdBanachLattice& P) {
  P.validate();
  if (P.norm.kind == NormKind::Lp) {
    // ||e_k||_p = 1 and the sup of sum_k x_k is ||1||_q = dim^(1 - 1/p).
    NormValue v;
    const long double p = static_cast<long double>(P.norm.p.get_d());
    v.approx = std::pow(static_cast<long double>(P.dim), 1 - 1 / p);
    return v.upper();
  }
  Rational K = 0;
  for (std::size_t k = 0; k < P.dim; ++k) {
    const Rational& w = P.norm.weight(k);
    Rational term = std::max(Rational(1), w) / w;
    K = P.norm.l1_type() ? std::max(K, term) : Rational(K + term);
  }
  return K;
}

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r > cap ? cap + 1 : static_cast<std::size_t>(std::llround(r));
}

std::size_t facet_count_capped(std::size_t M, std::size_t p, std::size_t cap) {
  long double r = std::pow(static_cast<long double>(M + 1), p) - std::pow(static_cast<long double>(M), p);
  return r > cap ? cap + 1 : static_cast<std::size_t>(std::llround(r));
}

}  // namespace

UnitNet positive_unit_net(const FdBanachLattice& P, const Rational& radius, std::size_t max_points) {
  P.validate();
  if (sgn(radius) <= 0) throw DomainError("net radius must be positive");
  const std::size_t p = P.dim;
  Rational c_min = P.norm.weight(0);
  Rational b_max = P.norm.weight(0);
  for (std::size_t k = 1; k < p; ++k) {
    c_min = std::min(c_min, P.norm.weight(k));
    b_max = std::max(b_max, P.norm.weight(k));
  }
  UnitNet net;

  // Covering radius bound = C / M + delta; delta absorbs rounding of lp norms up.
  const bool simplex = P.norm.l1_type();
  Rational delta = P.norm.exact() ? Rational(0) : Rational("1/100000000000");
  Rational C;
  if (simplex) {
    // Rounding a simplex point to the 1/M grid moves it by < p/M in l1, and
    // ||u/||u|| - v/||v|||| <= 2 ||u - v|| / ||u|| with ||u|| >= c_min.
    C = 2 * Rational(p) * b_max / c_min;
  } else {
    // Rounding a point of the positive sup-norm sphere moves each coordinate
    // by <= 1/(2M), so the P-distance is <= ||1||_P / (2M); ||u|| >= c_min.
    C = norm_vec(Vector(p, 1), P).upper() / c_min;
  }
  if (radius <= delta) throw DomainError("net radius below the lp rounding allowance");
  const Rational ratio = C / (radius - delta);
  mpz_class M = ratio.get_num() / ratio.get_den() + 1;
  if (!M.fits_ulong_p() || M.get_ui() > max_points)
    throw CapExceeded("net mesh " + M.get_str() + " exceeds the point cap " + std::to_string(max_points));
  net.mesh = M.get_ui();
  net.covering_bound = C / net.mesh + delta;
  if (net.covering_bound >= radius) throw std::logic_error("net covering bound not below the radius");

  const std::size_t count = simplex ? binomial_capped(net.mesh + p - 1, p - 1, max_points)
                                    : facet_count_capped(net.mesh, p, max_points);
  if (count > max_points)
    throw CapExceeded("net would have more than " + std::to_string(max_points) + " points (mesh " +
                      std::to_string(net.mesh) + ")");

  auto push = [&](const std::vector<std::size_t>& a) {
    Vector g(p);
    for (std::size_t k = 0; k < p; ++k) g[k] = Rational(a[k]) / net.mesh;
    Rational rho = norm_vec(g, P).upper();
    net.points.push_back(vscale(1 / rho, g));
  };
  std::vector<std::size_t> a(p, 0);
  if (simplex) {
    // compositions of mesh into p nonnegative parts
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t k, std::size_t left) {
      if (k + 1 == p) {
        a[k] = left;
        push(a);
        return;
      }
      for (std::size_t v = 0; v <= left; ++v) {
        a[k] = v;
        fill(k + 1, left - v);
      }
    };
    fill(0, net.mesh);
  } else {
    // facet j: a_j = mesh, earlier coordinates < mesh, later ones <= mesh
    for (std::size_t j = 0; j < p; ++j) {
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == p) {
          push(a);
          return;
        }
        if (k == j) {
          a[k] = net.mesh;
          fill(k + 1);
          return;
        }
        const std::size_t top = k < j ? net.mesh - 1 : net.mesh;
        for (std::size_t v = 0; v <= top; ++v) {
          a[k] = v;
          fill(k + 1);
        }
      };
      fill(0);
    }
  }
  return net;
}

namespace {

void meet_into(Vector& z, const std::vector<std::size_t>& support, const Vector& lift, const Rational& weight) {
  for (auto j : support) {
    // z_j > lift_j / weight
    if (z[j] * weight > lift[j]) z[j] = lift[j] / weight;
  }
}

std::vector<std::size_t> support_of(const Vector& v) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (sgn(v[j]) != 0) s.push_back(j);
  return s;
}

}  // namespace

std::vector<Vector> net_meets_serial(const std::vector<Vector>& x, const std::vector<Vector>& points,
                                     const std::vector<Vector>& lifts) {
  std::vector<Vector> z = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    // Outside the support of x_k the meet is already 0 (every lift is >= 0).
    auto support = support_of(x[k]);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (sgn(points[i][k]) > 0) meet_into(z[k], support, lifts[i], points[i][k]);
  }
  return z;
}

std::vector<Vector> net_meets_parallel(const std::vector<Vector>& x, const std::vector<Vector>& points,
                                       const std::vector<Vector>& lifts) {
  std::vector<Vector> z = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto support = support_of(x[k]);
    const int threads = omp_get_max_threads();
    std::vector<Vector> partial(threads, x[k]);
#pragma omp parallel
    {
      Vector& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.size()); ++i)
        if (sgn(points[i][k]) > 0) meet_into(mine, support, lifts[i], points[i][k]);
    }
    for (const auto& part : partial) z[k] = vmeet(z[k], part);
  }
  return z;
}

ProjectiveLift projective_lift(const LatticeHom& T, const FdBanachLattice& P, const Quotient& q,
                               const Rational& eps, PreimageOracle& oracle,
                               const ProjectiveLiftOptions& options) {
  if (sgn(eps) <= 0) throw DomainError("eps must be positive");
  P.validate();
  T.validate();
  if (T.domain_dim != P.dim || T.codomain_dim() != q.quotient_space.dim)
    throw DomainError("T must map the " + std::to_string(P.dim) + "-dimensional domain into X/J of dimension " +
                      std::to_string(q.quotient_space.dim));
  const std::size_t p = P.dim;
  const Rational e = std::min(eps, Rational(1));

  ProjectiveLift out;
  out.T_norm = hom_norm(T, P, q.quotient_space).value;
  out.K = norm_comparison_constant(P);
  out.eps_net = e / (1 + out.K * (out.T_norm.upper() + 1));

  std::vector<Vector> images;
  for (std::size_t k = 0; k < p; ++k) images.push_back(apply_hom(T, unit_vector(p, k)));
  out.s = lift_disjoint(q, images, oracle).xs;
  for (std::size_t k = 0; k < p; ++k) {
    out.t.push_back(oracle.preimage(q, images[k], std::nullopt, out.eps_net));
    out.x.push_back(vmeet(out.s[k], vpos(out.t[k])));
  }

  auto net = positive_unit_net(P, out.eps_net, options.max_net_points);
  out.mesh = net.mesh;
  out.net_size = net.points.size();
  out.covering_bound = net.covering_bound;
  std::vector<Vector> lifts;
  lifts.reserve(net.points.size());
  for (const auto& point : net.points)
    lifts.push_back(oracle.preimage(q, apply_hom(T, point), std::nullopt, out.eps_net));
  out.z = options.parallel ? net_meets_parallel(out.x, net.points, lifts)
                           : net_meets_serial(out.x, net.points, lifts);

  // The z_k are disjoint, so S e_k = z_k defines a lattice homomorphism.
  out.S.domain_dim = p;
  out.S.rows.resize(q.space.dim);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t j = 0; j < q.space.dim; ++j)
      if (sgn(out.z[k][j]) != 0) {
        if (out.S.rows[j]) throw std::logic_error("lifted images overlap");
        out.S.rows[j] = HomRow{k, out.z[k][j]};
      }

  if (!same_map(compose(q.map, out.S), T)) throw std::logic_error("Q o S differs from T");
  out.S_norm = hom_norm(out.S, P, q.space).value;
  const bool exact = out.S_norm.exact && out.T_norm.exact;
  const bool within = exact ? *out.S_norm.exact <= *out.T_norm.exact + eps
                            : out.S_norm.approx <= out.T_norm.approx + static_cast<long double>(eps.get_d()) +
                                                       kLpTolerance * (1 + out.T_norm.approx);
  if (!within) throw std::logic_error("lifted norm exceeds ||T|| + eps");
  return out;
}

}  // namespace fbl
