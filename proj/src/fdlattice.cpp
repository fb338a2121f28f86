#include "fbl/fdlattice.hpp"

#include <algorithm>
#include <cmath>

#include "fbl/errors.hpp"

namespace fbl {

namespace {

long double to_ld(const Rational& r) { return static_cast<long double>(r.get_d()); }

Rational from_double(double d) {
  Rational r;
  mpq_set_d(r.get_mpq_t(), d);
  return r;
}

NormValue exact_value(Rational r) {
  NormValue v;
  v.approx = to_ld(r);
  v.exact = std::move(r);
  return v;
}

void require_dim(const Vector& x, std::size_t dim, const char* what) {
  if (x.size() != dim)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + " coordinates, got " +
                         std::to_string(x.size()));
}

void require_same(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionError("vectors of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
}

Vector basis(std::size_t dim, std::size_t k, Rational value = 1) {
  Vector e(dim, 0);
  e[k] = std::move(value);
  return e;
}

}  // namespace

Rational NormSpec::weight(std::size_t k) const {
  return (kind == NormKind::WeightedL1 || kind == NormKind::WeightedLInf) ? weights.at(k) : Rational(1);
}

std::string to_string(const NormSpec& spec) {
  auto list = [&] {
    std::string s;
    for (std::size_t i = 0; i < spec.weights.size(); ++i) s += (i ? "," : "") + to_string(spec.weights[i]);
    return s;
  };
  switch (spec.kind) {
    case NormKind::L1:
      return "l1";
    case NormKind::LInf:
      return "linf";
    case NormKind::Lp:
      return "lp:" + to_string(spec.p);
    case NormKind::WeightedL1:
      return "wl1:" + list();
    case NormKind::WeightedLInf:
      return "wlinf:" + list();
  }
  return "?";
}

void FdBanachLattice::validate() const {
  if (dim == 0) throw DimensionError("lattice dimension must be positive");
  if (norm.kind == NormKind::Lp && norm.p <= 1) throw DomainError("lp needs p > 1, got " + to_string(norm.p));
  if (norm.kind == NormKind::WeightedL1 || norm.kind == NormKind::WeightedLInf) {
    if (norm.weights.size() != dim)
      throw DimensionError("expected " + std::to_string(dim) + " weights, got " +
                           std::to_string(norm.weights.size()));
    for (const auto& w : norm.weights)
      if (sgn(w) <= 0) throw DomainError("weights must be positive, got " + to_string(w));
  }
}

Rational NormValue::upper() const {
  if (exact) return *exact;
  return from_double(static_cast<double>(approx * (1 + kLpTolerance)));
}

NormValue norm_vec(const Vector& x, const FdBanachLattice& space) {
  space.validate();
  require_dim(x, space.dim, "norm_vec");
  const auto& spec = space.norm;
  if (spec.l1_type()) {
    Rational total = 0;
    for (std::size_t k = 0; k < x.size(); ++k) total += spec.weight(k) * abs(x[k]);
    return exact_value(total);
  }
  if (spec.linf_type()) {
    Rational best = 0;
    for (std::size_t k = 0; k < x.size(); ++k) best = std::max(best, Rational(spec.weight(k) * abs(x[k])));
    return exact_value(best);
  }
  // Scale by the largest entry first so the powers stay in range.
  const long double p = to_ld(spec.p);
  long double top = 0;
  for (const auto& c : x) top = std::max(top, std::fabs(to_ld(c)));
  NormValue v;
  if (top == 0) {
    v.exact = Rational(0);
    return v;
  }
  long double sum = 0;
  for (const auto& c : x) sum += std::pow(std::fabs(to_ld(c)) / top, p);
  v.approx = top * std::pow(sum, 1 / p);
  return v;
}

Vector vjoin(const Vector& a, const Vector& b) {
  require_same(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Vector vmeet(const Vector& a, const Vector& b) {
  require_same(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

Vector vpos(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = sgn(a[i]) > 0 ? a[i] : Rational(0);
  return r;
}

Vector vadd(const Vector& a, const Vector& b) {
  require_same(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector vsub(const Vector& a, const Vector& b) {
  require_same(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector vscale(const Rational& c, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vnonneg(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) >= 0; });
}

bool vdisjoint(const Vector& a, const Vector& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) return false;
  return true;
}

bool vzero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool vleq(const Vector& a, const Vector& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void LatticeHom::validate() const {
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (!rows[j]) continue;
    if (rows[j]->source >= domain_dim)
      throw DomainError("row " + std::to_string(j + 1) + " reads coordinate " +
                        std::to_string(rows[j]->source + 1) + " of a " + std::to_string(domain_dim) +
                        "-dimensional domain");
    if (sgn(rows[j]->scale) < 0)
      throw DomainError("row " + std::to_string(j + 1) + " has negative scale " + to_string(rows[j]->scale));
  }
}

LatticeHom LatticeHom::identity(std::size_t m) {
  LatticeHom T{m, {}};
  for (std::size_t j = 0; j < m; ++j) T.rows.push_back(HomRow{j, 1});
  return T;
}

Vector apply_hom(const LatticeHom& T, const Vector& x) {
  T.validate();
  require_dim(x, T.domain_dim, "apply_hom");
  Vector y(T.rows.size(), 0);
  for (std::size_t j = 0; j < T.rows.size(); ++j)
    if (T.rows[j]) y[j] = T.rows[j]->scale * x[T.rows[j]->source];
  return y;
}

LatticeHom compose(const LatticeHom& outer, const LatticeHom& inner) {
  outer.validate();
  inner.validate();
  if (outer.domain_dim != inner.codomain_dim())
    throw DimensionError("cannot compose: inner maps into dimension " + std::to_string(inner.codomain_dim()) +
                         ", outer expects " + std::to_string(outer.domain_dim));
  LatticeHom out{inner.domain_dim, {}};
  out.rows.resize(outer.rows.size());
  for (std::size_t j = 0; j < outer.rows.size(); ++j) {
    const auto& row = outer.rows[j];
    if (!row || !inner.rows[row->source]) continue;
    const auto& in = *inner.rows[row->source];
    out.rows[j] = HomRow{in.source, row->scale * in.scale};
  }
  return out;
}

bool same_map(const LatticeHom& a, const LatticeHom& b) {
  if (a.domain_dim != b.domain_dim || a.codomain_dim() != b.codomain_dim()) return false;
  for (std::size_t k = 0; k < a.domain_dim; ++k) {
    auto e = basis(a.domain_dim, k);
    if (apply_hom(a, e) != apply_hom(b, e)) return false;
  }
  return true;
}

Vector Quotient::zero_pad(const Vector& y) const {
  require_dim(y, kept.size(), "zero_pad");
  Vector x(space.dim, 0);
  for (std::size_t i = 0; i < kept.size(); ++i) x[kept[i]] = y[i];
  return x;
}

Quotient quotient(const FdBanachLattice& space, const IdealSpec& J) {
  space.validate();
  for (auto c : J.coords)
    if (c < 1 || c > space.dim)
      throw DomainError("ideal coordinate " + std::to_string(c) + " outside 1.." + std::to_string(space.dim));
  if (J.coords.size() == space.dim) throw DomainError("quotient by the whole space is the zero space");

  Quotient q;
  q.space = space;
  for (std::size_t k = 0; k < space.dim; ++k)
    (J.coords.count(k + 1) ? q.ideal : q.kept).push_back(k);
  q.quotient_space.dim = q.kept.size();
  q.quotient_space.norm = space.norm;
  if (!space.norm.weights.empty()) {
    q.quotient_space.norm.weights.clear();
    for (auto k : q.kept) q.quotient_space.norm.weights.push_back(space.norm.weights[k]);
  }
  q.map.domain_dim = space.dim;
  for (auto k : q.kept) q.map.rows.push_back(HomRow{k, 1});
  return q;
}

HomNorm hom_norm(const LatticeHom& T, const FdBanachLattice& dom, const FdBanachLattice& cod) {
  dom.validate();
  cod.validate();
  T.validate();
  if (T.domain_dim != dom.dim || T.codomain_dim() != cod.dim)
    throw DimensionError("map " + std::to_string(T.domain_dim) + " -> " + std::to_string(T.codomain_dim()) +
                         " does not match spaces " + std::to_string(dom.dim) + " -> " +
                         std::to_string(cod.dim));
  const std::size_t n = dom.dim;
  HomNorm out;

  if (dom.norm.l1_type()) {
    // Convex in x, so the sup over the positive unit ball sits at an extreme point e_k / w_k.
    for (std::size_t k = 0; k < n; ++k) {
      auto x = basis(n, k, 1 / dom.norm.weight(k));
      auto v = norm_vec(apply_hom(T, x), cod);
      if (k == 0 || v.approx > out.value.approx ||
          (v.exact && out.value.exact && *v.exact > *out.value.exact)) {
        out.value = v;
        out.witness = x;
      }
    }
    return out;
  }
  if (dom.norm.linf_type()) {
    // Monotone norm: the positive unit ball has the top corner 1/w.
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = 1 / dom.norm.weight(k);
    out.value = norm_vec(apply_hom(T, x), cod);
    out.witness = x;
    return out;
  }

  // Domain lp: reduce to maximising over the positive part of the p-sphere.
  const long double p = to_ld(dom.norm.p);
  std::vector<Rational> c(n, 0);  // exact collected coefficients for l1/linf codomains
  std::vector<long double> cl(n, 0);
  auto argmax = [&] {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (cl[k] > cl[best]) best = k;
    return best;
  };

  if (cod.norm.l1_type() || cod.norm.linf_type()) {
    for (std::size_t j = 0; j < T.rows.size(); ++j) {
      if (!T.rows[j]) continue;
      Rational term = cod.norm.weight(j) * T.rows[j]->scale;
      auto& slot = c[T.rows[j]->source];
      slot = cod.norm.l1_type() ? Rational(slot + term) : std::max(slot, term);
    }
    for (std::size_t k = 0; k < n; ++k) cl[k] = to_ld(c[k]);
    if (cod.norm.linf_type()) {
      // sup of max_k c_k x_k with ||x||_p = 1 is max_k c_k at a basis vector.
      auto k = argmax();
      out.value = exact_value(c[k]);
      out.witness = basis(n, k);
      return out;
    }
    // sup of sum_k c_k x_k is the dual norm ||c||_q, attained at x_k ~ c_k^(q-1).
    const long double q = p / (p - 1);
    long double top = cl[argmax()];
    if (top == 0) {
      out.value = exact_value(0);
      out.witness = basis(n, 0);
      return out;
    }
    long double sum = 0;
    for (auto v : cl) sum += std::pow(v / top, q);
    out.value.approx = top * std::pow(sum, 1 / q);
    out.witness.resize(n);
    for (std::size_t k = 0; k < n; ++k)
      out.witness[k] = from_double(static_cast<double>(std::pow(cl[k] / top, q - 1)));
    return out;
  }

  // lp -> lr: ||Tx||_r^r = sum_k c_k x_k^r with c_k = sum of scale^r over rows reading k.
  const long double r = to_ld(cod.norm.p);
  for (const auto& row : T.rows)
    if (row) cl[row->source] += std::pow(to_ld(row->scale), r);
  auto k = argmax();
  if (cl[k] == 0) {
    out.value = exact_value(0);
    out.witness = basis(n, 0);
    return out;
  }
  if (r >= p) {
    // t -> t^(r/p) is convex on the simplex t_k = x_k^p, so a vertex wins.
    out.value.approx = std::pow(cl[k], 1 / r);
    out.witness = basis(n, k);
    return out;
  }
  // Concave case: Lagrange allocation t_k ~ c_k^(p/(p-r)).
  long double sum = 0;
  for (auto v : cl) sum += std::pow(v / cl[k], p / (p - r));
  out.value.approx = std::pow(cl[k], 1 / r) * std::pow(sum, (p - r) / (p * r));
  out.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.witness[i] = from_double(static_cast<double>(std::pow(std::pow(cl[i] / cl[k], p / (p - r)), 1 / p)));
  return out;
}

}  // namespace fbl
