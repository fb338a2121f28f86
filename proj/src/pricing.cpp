#include "fbl/pricing.hpp"

#include <algorithm>

#include "fbl/parallel.hpp"

namespace fbl {

PricingProblem PricingProblem::from_cells(const CellDecomposition& decomposition) {
  PricingProblem p;
  p.n = decomposition.n;
  for (const auto& c : decomposition.cells)
    p.vertices.insert(p.vertices.end(), c.vertices.begin(), c.vertices.end());
  std::sort(p.vertices.begin(), p.vertices.end(), lex_less);
  p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());

  p.magnitude.assign(p.vertices.size(), Rational(0));
  p.abs_coords.resize(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    for (const auto& x : p.vertices[i]) p.abs_coords[i].push_back(abs(x));

  for (const auto& c : decomposition.cells) {
    CellView view{c.active, {}};
    for (const auto& v : c.vertices) {
      auto it = std::lower_bound(p.vertices.begin(), p.vertices.end(), v, lex_less);
      auto id = static_cast<std::size_t>(it - p.vertices.begin());
      view.vertex_ids.push_back(id);
      p.magnitude[id] = abs(c.active(v));
    }
    p.cells.push_back(std::move(view));
  }
  return p;
}

namespace {

bool better(const PricingResult& a, bool a_set, const PricingResult& b, bool b_set) {
  if (!b_set) return a_set;
  if (!a_set) return false;
  if (a.violation != b.violation) return a.violation > b.violation;
  return a.vertex < b.vertex;
}

void scan_cell(const PricingProblem& p, const PricingProblem::CellView& cell,
               const std::vector<Rational>& prices, PricingResult& best, bool& have) {
  for (auto id : cell.vertex_ids) {
    PricingResult r{abs(cell.active(p.vertices[id])), id};
    for (std::size_t k = 0; k < p.n; ++k)
      if (sgn(prices[k]) != 0) r.violation -= prices[k] * p.abs_coords[id][k];
    if (better(r, true, best, have)) {
      best = std::move(r);
      have = true;
    }
  }
}

}  // namespace

PricingResult price_serial(const PricingProblem& problem, const std::vector<Rational>& prices) {
  PricingResult best;
  bool have = false;
  for (const auto& cell : problem.cells) scan_cell(problem, cell, prices, best, have);
  return best;
}

PricingResult price_parallel(const PricingProblem& problem, const std::vector<Rational>& prices) {
  const int threads = omp_get_max_threads();
  std::vector<PricingResult> best(threads);
  std::vector<char> have(threads, 0);
#pragma omp parallel
  {
    const int t = omp_get_thread_num();
    bool mine = false;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(problem.cells.size()); ++i)
      scan_cell(problem, problem.cells[i], prices, best[t], mine);
    have[t] = mine;
  }
  PricingResult out;
  bool set = false;
  for (int t = 0; t < threads; ++t)
    if (better(best[t], have[t], out, set)) {
      out = best[t];
      set = true;
    }
  return out;
}

}  // namespace fbl
