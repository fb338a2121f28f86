#include "fbl/freenorm.hpp"

#include <algorithm>
#include <stdexcept>

#include "fbl/errors.hpp"
#include "fbl/pricing.hpp"
#include "fbl/simplex.hpp"

namespace fbl {

void AtomicMeasure::validate() const {
  if (n < 1) throw DimensionError("measure over zero generators");
  std::vector<Point> pts;
  for (const auto& a : atoms) {
    if (a.point.size() != n)
      throw DimensionError("atom " + to_string(a.point) + " does not have " + std::to_string(n) +
                           " coordinates");
    if (sup_norm(a.point) > 1) throw DomainError("atom " + to_string(a.point) + " is outside the cube");
    pts.push_back(a.point);
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw DomainError("atoms must sit at distinct points");
}

Rational dual_norm(const AtomicMeasure& mu) {
  mu.validate();
  Rational best = 0;
  for (std::size_t k = 0; k < mu.n; ++k) {
    Rational mass = 0;
    for (const auto& a : mu.atoms) mass += abs(a.weight) * abs(a.point[k]);
    best = std::max(best, mass);
  }
  return best;
}

namespace {

struct Column {
  std::vector<Rational> abs_coords;
  Rational gain;
};

LpResult solve_master(const std::vector<Column>& cols, std::size_t n) {
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(cols.size()));
  std::vector<Rational> c(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) A[k][i] = cols[i].abs_coords[k];
    c[i] = cols[i].gain;
  }
  return solve_lp(A, std::vector<Rational>(n, 1), c);
}

}  // namespace

NormCertificate free_norm(const Expr& f, const FreeNormOptions& options) {
  const std::size_t n = f.arity();
  NormCertificate cert;
  cert.primal.n = n;
  cert.prices.assign(n, 0);
  cert.value = 0;

  auto F = to_maxmin(f, options.limits);
  auto forms = F.distinct_forms();
  if (forms.size() == 1 && forms.front().is_zero()) return cert;

  auto problem = PricingProblem::from_cells(enumerate_cells(F, std::nullopt, options.limits, options.parallel));
  auto price = options.parallel ? price_parallel : price_serial;

  std::vector<std::size_t> in_master;
  std::vector<Column> cols;
  LpResult master;
  master.duals.assign(n, 0);
  master.x.clear();
  for (;;) {
    auto best = price(problem, master.duals);
    if (sgn(best.violation) <= 0) break;
    if (std::find(in_master.begin(), in_master.end(), best.vertex) != in_master.end())
      throw std::logic_error("pricing returned an atom already in the master problem");
    if (cert.iterations >= options.max_iterations)
      throw CapExceeded("free norm did not converge within " +
                        std::to_string(options.max_iterations) + " iterations");
    in_master.push_back(best.vertex);
    cols.push_back({problem.abs_coords[best.vertex], problem.magnitude[best.vertex]});
    master = solve_master(cols, n);
    ++cert.iterations;
    if (master.status != LpStatus::Optimal)
      throw std::logic_error("master LP is bounded and feasible by construction");
  }

  if (cols.empty()) return cert;
  cert.value = master.value;
  cert.prices = master.duals;
  for (std::size_t i = 0; i < in_master.size(); ++i)
    if (sgn(master.x[i]) > 0)
      cert.primal.atoms.push_back({problem.vertices[in_master[i]], master.x[i]});
  std::sort(cert.primal.atoms.begin(), cert.primal.atoms.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.point, b.point); });
  return cert;
}

bool verify_certificate(const Expr& f, const NormCertificate& c, const Limits& limits) {
  const std::size_t n = f.arity();
  try {
    if (c.prices.size() != n || c.primal.n != n) return false;
    c.primal.validate();
    Rational price_total = 0;
    for (const auto& y : c.prices) {
      if (sgn(y) < 0) return false;
      price_total += y;
    }
    if (price_total != c.value) return false;

    Rational objective = 0;
    std::vector<Rational> load(n, 0);
    for (const auto& a : c.primal.atoms) {
      if (sgn(a.weight) < 0) return false;
      objective += a.weight * abs(eval(f, a.point));
      for (std::size_t k = 0; k < n; ++k) load[k] += a.weight * abs(a.point[k]);
    }
    if (objective != c.value) return false;
    for (const auto& l : load)
      if (l > 1) return false;

    auto F = to_maxmin(f, limits);
    auto problem = PricingProblem::from_cells(enumerate_cells(F, std::nullopt, limits, false));
    return sgn(price_serial(problem, c.prices).violation) <= 0;
  } catch (const Error&) {
    return false;
  }
}

Rational quotient_norm(const Expr& f, const std::vector<Point>& A) {
  if (A.empty()) throw DomainError("quotient norm needs a nonempty point set");
  const std::size_t n = f.arity();
  std::vector<Column> cols;
  for (const auto& xi : A) {
    if (xi.size() != n) throw DimensionError("point " + to_string(xi) + " has the wrong dimension");
    if (sup_norm(xi) != 1)
      throw DomainError("point " + to_string(xi) + " is not on the cube boundary");
    Column col{{}, abs(eval(f, xi))};
    for (const auto& x : xi) col.abs_coords.push_back(abs(x));
    cols.push_back(std::move(col));
  }
  auto res = solve_master(cols, n);
  if (res.status != LpStatus::Optimal) throw std::logic_error("quotient LP is bounded and feasible");
  return res.value;
}

}  // namespace fbl
