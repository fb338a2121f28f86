#include <functional>
#include <set>

#include "doctest.h"
#include "fbl/canonical.hpp"
#include "fbl/errors.hpp"
#include "fbl/parser.hpp"
#include "fbl/simplex.hpp"
#include "support.hpp"

using namespace fbl;

namespace {

LinearForm form(std::initializer_list<int> c) {
  LinearForm f;
  for (int v : c) f.coeffs.emplace_back(v);
  return f;
}

// Distinct strict sign vectors seen on a dense rational grid of the square's
// boundary. Every open sector of a central line arrangement meets the grid.
std::set<std::vector<int>> sampled_sign_vectors(const std::vector<LinearForm>& hs) {
  std::set<std::vector<int>> seen;
  const int steps = 997;
  for (int i = -steps; i <= steps; ++i) {
    Rational t(i, steps);
    for (Point p : {Point{1, t}, Point{-1, t}, Point{t, 1}, Point{t, -1}}) {
      std::vector<int> s;
      bool on_plane = false;
      for (const auto& h : hs) {
        int v = sgn(h(p));
        if (v == 0) on_plane = true;
        s.push_back(v > 0 ? 1 : -1);
      }
      if (!on_plane) seen.insert(s);
    }
  }
  return seen;
}

// Every feasible strict sign vector, found by one exact LP per candidate:
// s_i h_i . (u - v) >= 1 with u, v >= 0.
std::set<std::vector<int>> lp_sign_vectors(const std::vector<LinearForm>& hs, std::size_t n) {
  std::set<std::vector<int>> out;
  std::vector<int> signs;
  std::function<void()> grow = [&] {
    std::vector<std::vector<Rational>> A;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      std::vector<Rational> row(2 * n);
      for (std::size_t k = 0; k < n; ++k) {
        row[k] = -hs[i].coeffs[k] * signs[i];
        row[n + k] = hs[i].coeffs[k] * signs[i];
      }
      A.push_back(row);
    }
    if (!A.empty() &&
        solve_lp(A, std::vector<Rational>(A.size(), -1), std::vector<Rational>(2 * n)).status !=
            LpStatus::Optimal)
      return;
    if (signs.size() == hs.size()) {
      out.insert(signs);
      return;
    }
    for (int s : {-1, 1}) {
      signs.push_back(s);
      grow();
      signs.pop_back();
    }
  };
  grow();
  return out;
}

}  // namespace

TEST_CASE("to_maxmin: atoms and absolute value") {
  auto F = to_maxmin(parse_expr("x1", 2));
  REQUIRE(F.groups.size() == 1);
  CHECK(F.groups[0] == std::vector<LinearForm>{form({1, 0})});

  auto A = to_maxmin(parse_expr("|x1|", 2));
  CHECK(A.groups == std::vector<std::vector<LinearForm>>{{form({-1, 0})}, {form({1, 0})}});

  auto Z = to_maxmin(Expr::zero(3));
  CHECK(Z.distinct_forms().size() == 1);
  CHECK(Z.distinct_forms()[0].is_zero());
}

TEST_CASE("to_maxmin preserves values exactly on random terms") {
  testing::RandomExprs gen(21);
  int converted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + gen.pick(3);
    auto f = gen.expr(n, 5);
    MaxMinForm F;
    try {
      F = to_maxmin(f);
    } catch (const CapExceeded&) {
      continue;
    }
    ++converted;
    for (int s = 0; s < 20; ++s) {
      auto xi = gen.point(n);
      CHECK(F(xi) == eval(f, xi));
    }
  }
  CHECK(converted >= 95);
}

TEST_CASE("to_maxmin: form cap is enforced") {
  Limits tiny;
  tiny.max_forms = 3;
  CHECK_THROWS_AS(to_maxmin(parse_expr("|x1| v |x2| v |x3|", 3), tiny), CapExceeded);
}

TEST_CASE("enumerate_cells: |x1| in one dimension") {
  auto D = enumerate_cells(to_maxmin(parse_expr("|x1|", 1)));
  REQUIRE(D.cells.size() == 2);
  CHECK(D.cells[0].active == form({-1}));
  CHECK(D.cells[1].active == form({1}));
  CHECK(D.cells[0].vertices == std::vector<Point>{{-1}});
  CHECK(D.cells[1].vertices == std::vector<Point>{{1}});
}

TEST_CASE("enumerate_cells: x1 v x2 has two linear pieces") {
  auto D = enumerate_cells(to_maxmin(parse_expr("x1 v x2", 2)));
  auto regions = linearity_regions(D);
  CHECK(regions.size() == 2);
  CHECK(D.cells.size() == sampled_sign_vectors(D.hyperplanes).size());
}

TEST_CASE("enumerate_cells: |x1| v |x2| against brute-force sign vectors") {
  auto D = enumerate_cells(to_maxmin(parse_expr("|x1| v |x2|", 2)));
  auto sampled = sampled_sign_vectors(D.hyperplanes);
  // two coordinate lines and the two diagonals
  CHECK(D.hyperplanes.size() == 4);
  CHECK(D.cells.size() == 8);
  REQUIRE(sampled.size() == D.cells.size());
  std::size_t i = 0;
  for (const auto& s : sampled) CHECK(s == D.cells[i++].signs);
  CHECK(linearity_regions(D).size() == 4);
}

TEST_CASE("cell invariants on random terms") {
  testing::RandomExprs gen(22);
  Limits limits;
  limits.max_hyperplanes = 40;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + gen.pick(2);
    auto f = gen.expr(n, 4);
    CellDecomposition D;
    try {
      D = enumerate_cells(to_maxmin(f, limits), std::nullopt, limits);
    } catch (const CapExceeded&) {
      continue;
    }
    std::set<std::vector<int>> unique;
    for (const auto& c : D.cells) {
      unique.insert(c.signs);
      CHECK(sup_norm(c.witness) == 1);
      for (std::size_t h = 0; h < D.hyperplanes.size(); ++h)
        CHECK(sgn(D.hyperplanes[h](c.witness)) == c.signs[h]);
      CHECK(c.active(c.witness) == eval(f, c.witness));
      for (const auto& v : c.vertices) {
        CHECK(sup_norm(v) == 1);
        CHECK(c.active(v) == eval(f, v));
      }
    }
    CHECK(unique.size() == D.cells.size());
    // random points land in exactly one listed cell with the right value
    for (int s = 0; s < 20; ++s) {
      auto xi = gen.point(n);
      std::vector<int> sv;
      bool degenerate = false;
      for (const auto& h : D.hyperplanes) {
        int v = sgn(h(xi));
        degenerate |= v == 0;
        sv.push_back(v);
      }
      if (degenerate) continue;
      auto it = std::find_if(D.cells.begin(), D.cells.end(),
                             [&](const Cell& c) { return c.signs == sv; });
      REQUIRE(it != D.cells.end());
      CHECK(it->active(xi) == eval(f, xi));
    }
  }
}

TEST_CASE("enumerate_cells finds exactly the LP-feasible sign vectors") {
  testing::RandomExprs gen(27);
  int compared = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + gen.pick(3);
    CellDecomposition D;
    try {
      D = enumerate_cells(to_maxmin(gen.expr(n, 3)));
    } catch (const CapExceeded&) {
      continue;
    }
    if (D.hyperplanes.size() > 12) continue;
    std::set<std::vector<int>> found;
    for (const auto& c : D.cells) found.insert(c.signs);
    CHECK(found == lp_sign_vectors(D.hyperplanes, n));
    ++compared;
  }
  CHECK(compared >= 15);
}

TEST_CASE("enumerate_cells: restriction to one face and the hyperplane cap") {
  auto F = to_maxmin(parse_expr("|x1| v |x2|", 2));
  auto D = enumerate_cells(F, Face{0, 1});
  for (const auto& c : D.cells) {
    CHECK(c.signs[0] == 1);
    for (const auto& v : c.vertices) CHECK(v[0] == 1);
  }
  Limits tiny;
  tiny.max_hyperplanes = 3;
  CHECK_THROWS_AS(enumerate_cells(F, std::nullopt, tiny), CapExceeded);
  CHECK_THROWS_AS(enumerate_cells(F, Face{2, 1}), DomainError);
}

TEST_CASE("parallel and serial cell enumeration agree") {
  testing::RandomExprs gen(23);
  for (int trial = 0; trial < 15; ++trial) {
    auto f = gen.expr(3, 4);
    MaxMinForm F;
    try {
      F = to_maxmin(f);
      auto a = enumerate_cells(F, std::nullopt, {}, true);
      auto b = enumerate_cells(F, std::nullopt, {}, false);
      REQUIRE(a.cells.size() == b.cells.size());
      for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].signs == b.cells[i].signs);
        CHECK(a.cells[i].active == b.cells[i].active);
        CHECK(a.cells[i].vertices == b.cells[i].vertices);
      }
    } catch (const CapExceeded&) {
    }
  }
}

TEST_CASE("is_semantically_zero: identities") {
  CHECK(is_semantically_zero(parse_expr("(x1 v x2) - (x1 v x2)", 2)));
  CHECK(is_semantically_zero(parse_expr("|x1| - (x1 v -x1)", 1)));
  CHECK(is_semantically_zero(parse_expr("(x1 + x2) - ((x1 v x2) + (x1 /\\ x2))", 2)));
  CHECK(semantically_equal(parse_expr("x1 /\\ (x2 v x3)", 3),
                           parse_expr("(x1 /\\ x2) v (x1 /\\ x3)", 3)));
  auto t = semantic_zero_test(parse_expr("x1 v x2", 2));
  CHECK_FALSE(t.zero);
  REQUIRE(t.witness);
  CHECK(eval(parse_expr("x1 v x2", 2), *t.witness) != 0);
}

TEST_CASE("zero verdicts are sound; nonzero verdicts carry witnesses") {
  testing::RandomExprs gen(24);
  int zeros = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + gen.pick(3);
    auto g = gen.expr(n, 3);
    // Half the cases are disguised zeros.
    auto f = trial % 2 ? g - Expr::join(Expr::meet(g, g), g) : gen.expr(n, 4);
    ZeroTest t;
    try {
      t = semantic_zero_test(f);
    } catch (const CapExceeded&) {
      continue;
    }
    if (t.zero) {
      ++zeros;
      for (int s = 0; s < 1000 / 20; ++s) CHECK(eval(f, gen.point(n)) == 0);
    } else {
      REQUIRE(t.witness);
      CHECK(eval(f, *t.witness) != 0);
    }
  }
  CHECK(zeros >= 30);
}

TEST_CASE("each generator is a weak unit: |f| /\\ |x_k| = 0 forces f = 0") {
  testing::RandomExprs gen(25);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + gen.pick(3);
    auto f = gen.expr(n, 3);
    auto k = 1 + gen.pick(n);
    try {
      bool cut = is_semantically_zero(Expr::meet(Expr::abs(f), Expr::abs(Expr::generator(n, k))));
      CHECK(cut == is_semantically_zero(f));
    } catch (const CapExceeded&) {
    }
  }
}

TEST_CASE("sup_norm: examples") {
  CHECK(sup_norm(parse_expr("|x1| v |x2|", 2)).value == 1);
  auto s = sup_norm(parse_expr("x1 + x2", 2));
  CHECK(s.value == 2);
  CHECK(s.witness == Point{-1, -1});
  auto p = sup_norm(parse_expr("(x1 - x2) v 0", 2));
  CHECK(p.value == 2);
  CHECK(p.witness == Point{1, -1});
  CHECK(sup_norm(Expr::zero(2)).value == 0);
}

TEST_CASE("sup_norm dominates sampled values and is attained") {
  testing::RandomExprs gen(26);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + gen.pick(3);
    auto f = gen.expr(n, 4);
    auto h = gen.expr(n, 2);
    try {
      auto s = sup_norm(f);
      CHECK(abs(eval(f, s.witness)) == s.value);
      for (int i = 0; i < 50; ++i) CHECK(abs(eval(f, gen.boundary_point(n))) <= s.value);
      // |f| <= |f| + |h| pointwise, so the sup norms are ordered
      CHECK(s.value <= sup_norm(Expr::abs(f) + Expr::abs(h)).value);
    } catch (const CapExceeded&) {
    }
  }
}
