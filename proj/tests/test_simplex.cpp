#include "doctest.h"
#include "fbl/simplex.hpp"

using namespace fbl;

namespace {

Rational dual_objective(const LpResult& r, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += r.duals[i] * b[i];
  return s;
}

void check_dual_feasible(const LpResult& r, const std::vector<std::vector<Rational>>& A,
                         const std::vector<Rational>& c) {
  for (const auto& y : r.duals) CHECK(y >= 0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < A.size(); ++i) col += r.duals[i] * A[i][j];
    CHECK(col >= c[j]);
  }
}

}  // namespace

TEST_CASE("textbook LP with exact optimum and duals") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
  std::vector<std::vector<Rational>> A = {{1, 0}, {0, 2}, {3, 2}};
  std::vector<Rational> b = {4, 12, 18}, c = {3, 5};
  auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 36);
  CHECK(r.x[0] == 2);
  CHECK(r.x[1] == 6);
  CHECK(dual_objective(r, b) == 36);
  CHECK(r.duals[0] == 0);
  CHECK(r.duals[1] == Rational(3, 2));
  CHECK(r.duals[2] == 1);
  check_dual_feasible(r, A, c);
}

TEST_CASE("phase one handles negative right-hand sides") {
  // max -x - y  s.t. x + y >= 2 (i.e. -x - y <= -2), x <= 3
  std::vector<std::vector<Rational>> A = {{-1, -1}, {1, 0}};
  std::vector<Rational> b = {-2, 3}, c = {-1, -1};
  auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == -2);
  CHECK(dual_objective(r, b) == -2);
  check_dual_feasible(r, A, c);
}

TEST_CASE("infeasible and unbounded programs are reported") {
  // x <= 1 and x >= 2
  auto inf = solve_lp({{1}, {-1}}, {1, -2}, {0});
  CHECK(inf.status == LpStatus::Infeasible);
  auto unb = solve_lp({{1, -1}}, {1}, {0, 1});
  CHECK(unb.status == LpStatus::Unbounded);
  auto empty = solve_lp({}, {}, {0, 0});
  CHECK(empty.status == LpStatus::Optimal);
}

TEST_CASE("Bland's rule terminates on Beale's cycling example") {
  // Classic instance on which the largest-coefficient rule cycles.
  std::vector<std::vector<Rational>> A = {
      {Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0}};
  std::vector<Rational> b = {0, 0, 1};
  std::vector<Rational> c = {Rational(3, 4), -20, Rational(1, 2), -6};
  auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(5, 4));
  CHECK(dual_objective(r, b) == r.value);
  check_dual_feasible(r, A, c);
}

TEST_CASE("strong duality on random feasible bounded programs") {
  std::uint64_t state = 7;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((state >> 33) % 7) - 2;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t m = 2 + trial % 4, n = 2 + trial % 3;
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n));
    std::vector<Rational> b(m), c(n);
    for (auto& row : A)
      for (auto& a : row) a = next();
    // a box row keeps the program bounded
    A.push_back(std::vector<Rational>(n, 1));
    for (auto& bi : b) bi = next() + 3;
    b.push_back(10);
    for (auto& cj : c) cj = next();
    auto r = solve_lp(A, b, c);
    if (r.status != LpStatus::Optimal) {
      CHECK(r.status == LpStatus::Infeasible);
      continue;
    }
    Rational primal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(r.x[j] >= 0);
      primal += c[j] * r.x[j];
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * r.x[j];
      CHECK(lhs <= b[i]);
    }
    CHECK(primal == r.value);
    CHECK(dual_objective(r, b) == r.value);
    check_dual_feasible(r, A, c);
  }
}
