#include "fbl/simplex.hpp"

#include <stdexcept>

namespace fbl {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b)
      : rows_(b.size()), vars_(rows_ ? A.front().size() : 0) {
    for (const auto& row : A)
      if (row.size() != vars_) throw std::invalid_argument("ragged constraint matrix");
    std::size_t artificials = 0;
    for (const auto& bi : b)
      if (sgn(bi) < 0) ++artificials;
    cols_ = vars_ + rows_ + artificials;
    t_.assign(rows_, std::vector<Rational>(cols_ + 1));
    basis_.resize(rows_);
    std::size_t next_art = vars_ + rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < vars_; ++j) t_[i][j] = flip ? Rational(-A[i][j]) : A[i][j];
      t_[i][vars_ + i] = flip ? -1 : 1;
      t_[i][cols_] = flip ? Rational(-b[i]) : b[i];
      if (flip) {
        t_[i][next_art] = 1;
        basis_[i] = next_art++;
      } else {
        basis_[i] = vars_ + i;
      }
    }
    allowed_ = cols_;
  }

  bool is_artificial(std::size_t j) const { return j >= vars_ + rows_; }

  // Maximises cost.x over columns < allowed_; false when unbounded.
  bool optimise(const std::vector<Rational>& cost) {
    for (;;) {
      auto d = reduced(cost);
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < allowed_; ++j)
        if (sgn(d[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  // d_j = c_B B^{-1} A_j - c_j for every column, plus the objective value at index cols_.
  std::vector<Rational> reduced(const std::vector<Rational>& cost) const {
    std::vector<Rational> d(cols_ + 1);
    for (std::size_t j = 0; j < cols_; ++j) d[j] = -cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(t_[i][j]) != 0) d[j] += cb * t_[i][j];
    }
    return d;
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& v : t_[r])
      if (sgn(v) != 0) v /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Pivots zero-level artificials out of the basis. [A | I] has full row rank so
  // a non-artificial column with a nonzero entry always exists.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < vars_ + rows_; ++j)
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
    }
    allowed_ = vars_ + rows_;
  }

  std::size_t rows_, vars_, cols_ = 0, allowed_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  if (A.size() != b.size()) throw std::invalid_argument("row count mismatch");
  LpResult out;
  const std::size_t n = c.size();
  if (A.empty()) {
    for (const auto& cj : c)
      if (sgn(cj) > 0) {
        out.status = LpStatus::Unbounded;
        return out;
      }
    out.status = LpStatus::Optimal;
    out.value = 0;
    out.x.assign(n, 0);
    return out;
  }
  if (A.front().size() != n) throw std::invalid_argument("objective length mismatch");

  Tableau tab(A, b);
  const std::size_t m = b.size();
  if (tab.cols_ > n + m) {
    std::vector<Rational> phase1(tab.cols_);
    for (std::size_t j = n + m; j < tab.cols_; ++j) phase1[j] = -1;
    tab.optimise(phase1);
    if (sgn(tab.reduced(phase1)[tab.cols_]) != 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    tab.expel_artificials();
  } else {
    tab.allowed_ = n + m;
  }

  std::vector<Rational> cost(tab.cols_);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.optimise(cost)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  auto d = tab.reduced(cost);
  out.status = LpStatus::Optimal;
  out.value = d[tab.cols_];
  out.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis_[i] < n) out.x[tab.basis_[i]] = tab.t_[i][tab.cols_];
  out.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.duals[i] = d[n + i];
  return out;
}

}  // namespace fbl
