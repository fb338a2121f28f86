// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fbl/canonical.hpp"
#include "fbl/errors.hpp"
#include "fbl/freenorm.hpp"
#include "fbl/lifting.hpp"
#include "fbl/parser.hpp"
#include "fbl/symnorm.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fbl;

namespace {

struct Tally {
  int checked = 0;
  int failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (notes.size() < 5) notes.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  std::function<void(Tally&)> body;
};

// Caps wide enough that no generated instance hits them; a cap hit is a failure.
Limits wide_limits() {
  Limits l;
  l.max_hyperplanes = 160;
  l.max_forms = 1 << 16;
  return l;
}

// Certificates produced by criteria 1-5, rechecked by criterion 6.
std::vector<std::pair<Expr, NormCertificate>> g_certificates;

NormCertificate certified(const Expr& f) {
  FreeNormOptions options;
  options.limits = wide_limits();
  auto c = free_norm(f, options);
  g_certificates.emplace_back(f, c);
  return c;
}

std::string show(const Expr& f) { return to_string(f); }

// Lattice identities s = t; s - t is semantically zero however a, b, c are chosen.
Expr identity_instance(testing::RandomExprs& gen, std::size_t n) {
  auto a = gen.expr(n, 2), b = gen.expr(n, 2), c = gen.expr(n, 2);
  switch (gen.pick(6)) {
    case 0:
      return Expr::join(a, b) + Expr::meet(a, b) - a - b;
    case 1:
      return Expr::abs(a) - Expr::pos(a) - Expr::pos(-a);
    case 2:
      return Expr::join(Expr::join(a, b), c) - Expr::join(a, Expr::join(b, c));
    case 3:
      return Expr::scale(3, Expr::join(a, b)) - Expr::join(Expr::scale(3, a), Expr::scale(3, b));
    case 4:
      return Expr::meet(a, Expr::join(b, c)) - Expr::join(Expr::meet(a, b), Expr::meet(a, c));
    default:
      return Expr::abs(a + b) - Expr::abs(Expr::join(a, b) + Expr::meet(a, b));
  }
}

FdBanachLattice space(std::size_t dim, NormSpec norm) { return {dim, std::move(norm)}; }

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "free norm of every generator is 1 (n = 1, 2, 3)", [](Tally& t) {
                        for (std::size_t n = 1; n <= 3; ++n)
                          for (std::size_t k = 1; k <= n; ++k) {
                            auto c = certified(Expr::generator(n, k));
                            t.expect(c.value == 1, "x" + std::to_string(k) + " in n=" + std::to_string(n) +
                                                       " has norm " + to_string(c.value));
                          }
                      }});

  criteria.push_back({2, "free norm of |x1| v ... v |xn| is n (n = 2, 3)", [](Tally& t) {
                        for (std::size_t n = 2; n <= 3; ++n) {
                          Expr f = Expr::abs(Expr::generator(n, 1));
                          for (std::size_t k = 2; k <= n; ++k) f = Expr::join(f, Expr::abs(Expr::generator(n, k)));
                          auto c = certified(f);
                          t.expect(c.value == Rational(n), "n=" + std::to_string(n) + " gives " + to_string(c.value));
                        }
                      }});

  criteria.push_back({3, "sup <= free <= n sup on 200 random terms (depth <= 5, n <= 3)", [](Tally& t) {
                        testing::RandomExprs gen(301);
                        for (int i = 0; i < 200; ++i) {
                          const std::size_t n = 1 + gen.pick(3);
                          auto f = gen.expr(n, 5, 0.1);
                          auto sup = sup_norm(f, wide_limits()).value;
                          auto free = certified(f).value;
                          t.expect(sup <= free && free <= n * sup, show(f));
                        }
                      }});

  criteria.push_back({4, "n = 1: free norm equals sup norm on 100 random terms", [](Tally& t) {
                        testing::RandomExprs gen(401);
                        for (int i = 0; i < 100; ++i) {
                          auto f = gen.expr(1, 5, 0.1);
                          t.expect(certified(f).value == sup_norm(f, wide_limits()).value, show(f));
                        }
                      }});

  criteria.push_back({5, "20 functions vanishing off one maximal face: free norm = sup norm", [](Tally& t) {
                        testing::RandomExprs gen(501);
                        for (int i = 0; i < 20; ++i) {
                          const std::size_t n = 2 + gen.pick(2);
                          const std::size_t axis = 1 + gen.pick(n);
                          const int sign = gen.unit() < 0.5 ? -1 : 1;
                          auto f = testing::clip(gen.expr(n, 2),
                                                 Expr::scale(1 + gen.pick(3), testing::face_cutoff(n, axis, sign)));
                          // the construction really vanishes on the other faces
                          bool vanishes = true;
                          for (int s = 0; s < 30; ++s) {
                            auto p = gen.boundary_point(n);
                            if (p[axis - 1] == sign) continue;
                            vanishes = vanishes && sgn(eval(f, p)) == 0;
                          }
                          t.expect(vanishes, "not supported on the face: " + show(f));
                          t.expect(certified(f).value == sup_norm(f, wide_limits()).value, show(f));
                        }
                      }});

  criteria.push_back({6, "every certificate from criteria 1-5 verifies (primal = dual)", [](Tally& t) {
                        for (const auto& [f, c] : g_certificates) {
                          Rational primal = 0, dual = 0;
                          for (const auto& atom : c.primal.atoms) primal += atom.weight * abs(eval(f, atom.point));
                          for (const auto& y : c.prices) dual += y;
                          t.expect(primal == c.value && dual == c.value, "duality gap for " + show(f));
                          t.expect(verify_certificate(f, c, wide_limits()), "rejected certificate for " + show(f));
                        }
                        // 6 + 2 + 200 + 100 + 20 calls
                        t.expect(g_certificates.size() == 328, "expected 328 certificates");
                      }});

  criteria.push_back({7, "free norm equals the brute-force vertex LP on 50 instances", [](Tally& t) {
                        testing::RandomExprs gen(701);
                        for (int i = 0; i < 50; ++i) {
                          const std::size_t n = 1 + gen.pick(3);
                          auto f = gen.expr(n, 4);
                          auto forms = to_maxmin(f, wide_limits()).distinct_forms();
                          t.expect(certified(f).value == testing::brute_force_free_norm(f, forms), show(f));
                        }
                      }});

  criteria.push_back({8, "P_B P_C = P_(B cap C) and ||P_B f|| <= ||f|| on 100 triples", [](Tally& t) {
                        testing::RandomExprs gen(801);
                        for (int i = 0; i < 100; ++i) {
                          const std::size_t n = 1 + gen.pick(3);
                          auto f = gen.expr(n, 4);
                          auto B = gen.subset(n), C = gen.subset(n);
                          std::set<std::size_t> both;
                          for (auto k : B)
                            if (C.count(k)) both.insert(k);
                          auto twice = project_onto(project_onto(f, C), B);
                          // P_(empty set) is the zero map
                          auto once = both.empty() ? Expr::zero(n) : project_onto(f, both);
                          t.expect(is_semantically_zero(twice - once, wide_limits()), "composition law: " + show(f));
                          auto nf = certified(f).value;
                          t.expect(certified(project_onto(f, B)).value <= nf, "not contractive: " + show(f));
                        }
                      }});

  criteria.push_back({9, "x1 is a weak unit: |f| /\\ |x1| = 0 forces f = 0 (50 instances)", [](Tally& t) {
                        testing::RandomExprs gen(901);
                        int premise_true = 0, premise_false = 0;
                        while (premise_true < 50) {
                          const std::size_t n = 1 + gen.pick(3);
                          // half lattice identities (zero), half arbitrary terms
                          auto f = gen.unit() < 0.5 ? identity_instance(gen, n) : gen.expr(n, 3);
                          auto premise = Expr::meet(Expr::abs(f), Expr::abs(Expr::generator(n, 1)));
                          if (!is_semantically_zero(premise, wide_limits())) {
                            ++premise_false;
                            continue;
                          }
                          ++premise_true;
                          t.expect(is_semantically_zero(f, wide_limits()), "premise holds but f != 0: " + show(f));
                          bool zero_at_samples = true;
                          for (int s = 0; s < 20; ++s) zero_at_samples = zero_at_samples && sgn(eval(f, gen.point(n))) == 0;
                          t.expect(zero_at_samples, "nonzero sample value: " + show(f));
                        }
                        t.expect(premise_false > 0, "no instance exercised the negative side");
                      }});

  criteria.push_back({10, "quotient norm for A inside one face = max over A of |f| (30 instances)", [](Tally& t) {
                        testing::RandomExprs gen(1001);
                        for (int i = 0; i < 30; ++i) {
                          const std::size_t n = 1 + gen.pick(3);
                          auto f = gen.expr(n, 4);
                          const std::size_t axis = gen.pick(n);
                          const Rational side = gen.unit() < 0.5 ? -1 : 1;
                          std::vector<Point> A;
                          Rational best = 0;
                          for (std::size_t j = 0, m = 1 + gen.pick(5); j < m; ++j) {
                            auto p = gen.boundary_point(n);
                            p[axis] = side;
                            if (std::find(A.begin(), A.end(), p) != A.end()) continue;
                            best = std::max(best, abs(eval(f, p)));
                            A.push_back(p);
                          }
                          t.expect(quotient_norm(f, A) == best, show(f));
                        }
                      }});

  criteria.push_back({11, "symmetric norm: 2 sqrt2/pi, 4/pi and the [4/pi, 4 sqrt2/pi] sweep", [](Tally& t) {
                        const double pi = std::numbers::pi;
                        std::mt19937_64 rng(1101);
                        std::uniform_real_distribution<double> angle(0, 2 * pi);
                        for (int i = 0; i < 10; ++i) {
                          const double x = angle(rng);
                          const double one = symmetric_norm({{{x, 1}}});
                          t.expect(std::fabs(one - 2 * std::sqrt(2.0) / pi) <= 1e-9, "single atom at " + std::to_string(x));
                          const double two = symmetric_norm({{{x, 1}, {x + pi / 2, 1}}});
                          t.expect(std::fabs(two - 4 / pi) <= 1e-9, "orthogonal pair at " + std::to_string(x));
                        }
                        for (int i = 0; i < 100; ++i) {
                          const double sep = 2 * pi * (i + 1) / 101;
                          const double v = symmetric_norm({{{0.25, 1}, {0.25 + sep, 1}}});
                          t.expect(v >= 4 / pi - 1e-9 && v <= 4 * std::sqrt(2.0) / pi + 1e-9,
                                   "separation " + std::to_string(sep));
                        }
                      }});

  criteria.push_back({12, "lift_disjoint: 100 instances, disjoint nonnegative exact lifts", [](Tally& t) {
                        testing::RandomExprs gen(1201);
                        for (int i = 0; i < 100; ++i) {
                          const std::size_t m = 1 + gen.pick(8);
                          IdealSpec J;
                          for (std::size_t k = 1; k <= m; ++k)
                            if (gen.unit() < 0.35) J.coords.insert(k);
                          if (J.coords.size() == m) J.coords.erase(J.coords.begin());
                          auto q = quotient(space(m, gen.unit() < 0.5 ? NormSpec::l1() : NormSpec::linf()), J);
                          const std::size_t d = q.quotient_space.dim, N = 1 + gen.pick(5);
                          std::vector<Vector> ys(N, Vector(d, 0));
                          for (std::size_t j = 0; j < d; ++j)
                            if (auto owner = gen.pick(N + 1); owner < N) ys[owner][j] = gen.nonneg_rational();
                          CanonicalOracle canonical;
                          AdversarialOracle adversarial(12000 + i);
                          for (PreimageOracle* oracle : {static_cast<PreimageOracle*>(&canonical),
                                                         static_cast<PreimageOracle*>(&adversarial)}) {
                            auto xs = lift_disjoint(q, ys, *oracle).xs;
                            bool ok = xs.size() == N;
                            for (std::size_t a = 0; ok && a < N; ++a) {
                              ok = vnonneg(xs[a]) && apply_hom(q.map, xs[a]) == ys[a];
                              for (std::size_t b = 0; b < a; ++b) ok = ok && vzero(vmeet(xs[a], xs[b]));
                            }
                            t.expect(ok, "instance " + std::to_string(i) + " with " + oracle->name());
                          }
                        }
                      }});

  criteria.push_back({13, "lift_disjoint_families: 50 instances, disjoint across families", [](Tally& t) {
                        testing::RandomExprs gen(1301);
                        for (int i = 0; i < 50; ++i) {
                          const std::size_t m = 2 + gen.pick(7);
                          IdealSpec J;
                          for (std::size_t k = 1; k <= m; ++k)
                            if (gen.unit() < 0.35) J.coords.insert(k);
                          if (J.coords.size() == m) J.coords.erase(J.coords.begin());
                          auto q = quotient(space(m, gen.unit() < 0.5 ? NormSpec::l1() : NormSpec::linf()), J);
                          const std::size_t d = q.quotient_space.dim, count = 2 + gen.pick(3);
                          std::vector<std::size_t> owner(d);
                          for (auto& o : owner) o = gen.pick(count);
                          std::vector<std::vector<Vector>> A(count);
                          for (std::size_t n = 0; n < count; ++n)
                            for (std::size_t k = 0, size = 1 + gen.pick(3); k < size; ++k) {
                              Vector a(d, 0);
                              for (std::size_t j = 0; j < d; ++j)
                                if (owner[j] == n) a[j] = gen.nonneg_rational();
                              A[n].push_back(a);
                            }
                          AdversarialOracle oracle(13000 + i);
                          auto lift = lift_disjoint_families(q, A, oracle);
                          bool ok = lift.families.size() == count;
                          for (std::size_t n = 0; ok && n < count; ++n) {
                            ok = lift.families[n].size() == A[n].size();
                            for (std::size_t k = 0; ok && k < A[n].size(); ++k) {
                              const auto& b = lift.families[n][k];
                              ok = vnonneg(b) && apply_hom(q.map, b) == A[n][k];
                              for (std::size_t n2 = 0; n2 < n; ++n2)
                                for (const auto& other : lift.families[n2]) ok = ok && vzero(vmeet(b, other));
                            }
                          }
                          t.expect(ok, "instance " + std::to_string(i));
                        }
                      }});

  criteria.push_back({14, "projective_lift: 50 instances, Q S = T and ||S|| <= ||T|| + 1/10", [](Tally& t) {
                        testing::RandomExprs gen(1401);
                        const Rational eps(1, 10);
                        for (int i = 0; i < 50; ++i) {
                          const std::size_t p = 1 + gen.pick(3), m = 1 + gen.pick(6);
                          auto P = space(p, gen.unit() < 0.5 ? NormSpec::l1() : NormSpec::linf());
                          auto X = space(m, gen.unit() < 0.5 ? NormSpec::l1() : NormSpec::linf());
                          IdealSpec J;
                          for (std::size_t k = 1; k <= m; ++k)
                            if (gen.unit() < 0.35) J.coords.insert(k);
                          if (J.coords.size() == m) J.coords.erase(J.coords.begin());
                          auto q = quotient(X, J);
                          LatticeHom T{p, {}};
                          T.rows.resize(q.quotient_space.dim);
                          for (auto& row : T.rows)
                            if (gen.unit() < 0.8) row = HomRow{gen.pick(p), gen.nonneg_rational(4, 2)};
                          AdversarialOracle oracle(14000 + i);
                          auto lift = projective_lift(T, P, q, eps, oracle);
                          const std::string label = "instance " + std::to_string(i);
                          t.expect(same_map(compose(q.map, lift.S), T), label + ": Q S != T");
                          // independent recomputation of both norms
                          auto s = *hom_norm(lift.S, P, X).value.exact;
                          auto n = *hom_norm(T, P, q.quotient_space).value.exact;
                          t.expect(s <= n + eps, label + ": ||S|| = " + to_string(s) + " > " + to_string(n + eps));
                        }
                      }});

  int failures = 0;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(t);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && t.failed == 0 && t.checked > 0;
    failures += pass ? 0 : 1;
    std::ostringstream line;
    line << "criterion " << c.id << (c.id < 10 ? "  " : " ") << (pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
         << t.checked - t.failed << "/" << t.checked << " checks, " << std::fixed;
    line.precision(2);
    line << seconds << " s]";
    std::cout << line.str() << "\n";
    if (!error.empty()) std::cout << "    aborted: " << error << "\n";
    for (const auto& note : t.notes) std::cout << "    " << note << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
