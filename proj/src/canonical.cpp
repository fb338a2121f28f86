#include "fbl/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "fbl/errors.hpp"
#include "fbl/parallel.hpp"

namespace fbl {

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Rational MaxMinForm::operator()(const Point& xi) const {
  Rational best;
  bool first = true;
  for (const auto& group : groups) {
    Rational low = group.front()(xi);
    for (std::size_t j = 1; j < group.size(); ++j) low = std::min(low, group[j](xi));
    if (first || low > best) best = low;
    first = false;
  }
  return best;
}

std::size_t MaxMinForm::form_count() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  return total;
}

std::vector<LinearForm> MaxMinForm::distinct_forms() const {
  std::vector<LinearForm> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

namespace {

using Group = std::vector<LinearForm>;
using Groups = std::vector<Group>;

class Normaliser {
 public:
  Normaliser(std::size_t n, const Limits& limits) : n_(n), limits_(limits) {}

  Groups convert(const Node& node) {
    switch (node.kind) {
      case NodeKind::Zero:
        return {{LinearForm{Point(n_, 0)}}};
      case NodeKind::Generator: {
        LinearForm e{Point(n_, 0)};
        e.coeffs[node.index - 1] = 1;
        return {{e}};
      }
      case NodeKind::Scale:
        return scale(node.coeff, convert(*node.left));
      case NodeKind::Neg:
        return negate(convert(*node.left));
      case NodeKind::Abs: {
        auto g = convert(*node.left);
        auto ng = negate(g);
        return join(std::move(g), std::move(ng));
      }
      case NodeKind::Sum:
        return add(convert(*node.left), convert(*node.right));
      case NodeKind::Join:
        return join(convert(*node.left), convert(*node.right));
      case NodeKind::Meet:
        return meet(convert(*node.left), convert(*node.right));
    }
    return {};
  }

  Groups prune(Groups gs) const {
    for (auto& g : gs) {
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    std::sort(gs.begin(), gs.end(), [](const Group& a, const Group& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    Groups kept;
    for (auto& g : gs) {
      bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Group& k) {
        return std::includes(g.begin(), g.end(), k.begin(), k.end());
      });
      if (!dominated) kept.push_back(std::move(g));
    }
    std::sort(kept.begin(), kept.end());
    guard(kept);
    return kept;
  }

 private:
  void guard(const Groups& gs) const {
    std::size_t total = 0;
    for (const auto& g : gs) total += g.size();
    if (total > limits_.max_forms)
      throw CapExceeded("max-min form needs " + std::to_string(total) + " linear forms (cap " +
                        std::to_string(limits_.max_forms) + ")");
  }

  static LinearForm combine(const LinearForm& a, const LinearForm& b) {
    LinearForm out{a.coeffs};
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
    return out;
  }

  Groups scale(const Rational& c, Groups gs) {
    if (sgn(c) == 0) return {{LinearForm{Point(n_, 0)}}};
    if (sgn(c) < 0) return negate(scale(Rational(-c), std::move(gs)));
    for (auto& g : gs)
      for (auto& f : g)
        for (auto& x : f.coeffs) x *= c;
    return gs;
  }

  // -(max_i min_j l_ij) = max over choices of min_i (-l_{i, choice(i)}).
  Groups negate(const Groups& gs) {
    Groups acc;
    for (const auto& f : gs.front()) acc.push_back({flip(f)});
    acc = prune(std::move(acc));
    for (std::size_t i = 1; i < gs.size(); ++i) {
      Groups next;
      std::size_t total = 0;
      for (const auto& partial : acc)
        for (const auto& f : gs[i]) {
          Group g = partial;
          g.push_back(flip(f));
          total += g.size();
          if (total > 8 * limits_.max_forms + 64)
            throw CapExceeded("negation expands past the form cap");
          next.push_back(std::move(g));
        }
      acc = prune(std::move(next));
    }
    return acc;
  }

  static LinearForm flip(const LinearForm& f) {
    LinearForm out{f.coeffs};
    for (auto& x : out.coeffs) x = -x;
    return out;
  }

  Groups add(const Groups& a, const Groups& b) {
    guard_product(a, b);
    Groups out;
    for (const auto& ga : a)
      for (const auto& gb : b) {
        Group g;
        g.reserve(ga.size() * gb.size());
        for (const auto& fa : ga)
          for (const auto& fb : gb) g.push_back(combine(fa, fb));
        out.push_back(std::move(g));
      }
    return prune(std::move(out));
  }

  Groups join(Groups a, Groups b) {
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    return prune(std::move(a));
  }

  Groups meet(const Groups& a, const Groups& b) {
    guard_product(a, b);
    Groups out;
    for (const auto& ga : a)
      for (const auto& gb : b) {
        Group g = ga;
        g.insert(g.end(), gb.begin(), gb.end());
        out.push_back(std::move(g));
      }
    return prune(std::move(out));
  }

  void guard_product(const Groups& a, const Groups& b) const {
    std::size_t fa = 0, fb = 0;
    for (const auto& g : a) fa += g.size();
    for (const auto& g : b) fb += g.size();
    if (fa * fb > 8 * limits_.max_forms * limits_.max_forms)
      throw CapExceeded("intermediate product of " + std::to_string(fa) + " x " +
                        std::to_string(fb) + " forms exceeds the form cap");
  }

  std::size_t n_;
  Limits limits_;
};

LinearForm normalise(LinearForm h) {
  auto it = std::find_if(h.coeffs.begin(), h.coeffs.end(),
                         [](const Rational& c) { return sgn(c) != 0; });
  Rational lead = *it;
  for (auto& c : h.coeffs) c /= lead;
  return h;
}

int sign_of(const Rational& r) { return sgn(r) > 0 ? 1 : (sgn(r) < 0 ? -1 : 0); }

Point to_unit_face(Point p) {
  Rational m = sup_norm(p);
  for (auto& c : p) c /= m;
  return p;
}

class VertexSet {
 public:
  explicit VertexSet(std::size_t size = 0) : words_((size + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  VertexSet operator&(const VertexSet& o) const {
    VertexSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool meets(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// All arrangement vertices on the cube boundary, with, for every hyperplane,
// the vertices strictly on each side and those weakly on each side.
struct VertexTable {
  std::vector<Point> points;
  std::vector<VertexSet> strict_neg, strict_pos, weak_neg, weak_pos;

  const VertexSet& strict(std::size_t h, int s) const { return s < 0 ? strict_neg[h] : strict_pos[h]; }
  const VertexSet& weak(std::size_t h, int s) const { return s < 0 ? weak_neg[h] : weak_pos[h]; }
};

struct SearchNode {
  std::vector<int> signs;
  VertexSet closure;  // vertices in the closure of the partial cell
};

// Depth-first sign-vector search. The closure of a nonempty open cone meets the
// cube boundary in a union of polytopes whose vertices are arrangement vertices,
// and a linear function is positive somewhere on the open cone iff it is
// positive at one of those vertices. So each branch is decided by a set test.
void search(const VertexTable& table, std::size_t depth_end, SearchNode node,
            std::vector<SearchNode>& out) {
  const std::size_t d = node.signs.size();
  if (d == depth_end) {
    out.push_back(std::move(node));
    return;
  }
  for (int s : {-1, 1}) {
    if (!node.closure.meets(table.strict(d, s))) continue;
    SearchNode c{node.signs, node.closure & table.weak(d, s)};
    c.signs.push_back(s);
    search(table, depth_end, std::move(c), out);
  }
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs) {
  const std::size_t d = rhs.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && sgn(m[piv][col]) == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < d; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < d; ++r) rhs[r] /= m[r][r];
  return rhs;
}

}  // namespace

MaxMinForm to_maxmin(const Expr& f, const Limits& limits) {
  Normaliser norm(f.arity(), limits);
  MaxMinForm out;
  out.n = f.arity();
  out.groups = norm.prune(norm.convert(f.root()));
  return out;
}

std::vector<LinearForm> arrangement_hyperplanes(const MaxMinForm& F) {
  std::vector<LinearForm> coords;
  for (std::size_t k = 0; k < F.n; ++k) {
    LinearForm e{Point(F.n, 0)};
    e.coeffs[k] = 1;
    coords.push_back(std::move(e));
  }
  auto forms = F.distinct_forms();
  std::vector<LinearForm> diffs;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      LinearForm d{forms[i].coeffs};
      for (std::size_t k = 0; k < F.n; ++k) d.coeffs[k] -= forms[j].coeffs[k];
      diffs.push_back(normalise(std::move(d)));
    }
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  for (auto& d : diffs)
    if (std::find(coords.begin(), coords.end(), d) == coords.end()) coords.push_back(std::move(d));
  return coords;
}

std::vector<Point> face_vertices(const std::vector<LinearForm>& hyperplanes, std::size_t n,
                                 const Face& face) {
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < n; ++k)
    if (k != face.axis) free.push_back(k);
  const std::size_t d = free.size();

  struct Row {
    std::vector<Rational> a;
    Rational rhs;
    bool operator<(const Row& o) const {
      if (a != o.a) return lex_less(a, o.a);
      return rhs < o.rhs;
    }
    bool operator==(const Row& o) const { return a == o.a && rhs == o.rhs; }
  };
  std::vector<Row> rows;
  for (const auto& h : hyperplanes) {
    Row r;
    for (auto k : free) r.a.push_back(h.coeffs[k]);
    if (std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return sgn(x) == 0; }))
      continue;
    r.rhs = -h.coeffs[face.axis] * face.sign;
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < d; ++j)
    for (int s : {-1, 1}) {
      Row r{std::vector<Rational>(d, 0), s};
      r.a[j] = 1;
      rows.push_back(std::move(r));
    }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  std::vector<Point> out;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t slot, std::size_t from) {
    if (slot == d) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> rhs;
      for (auto i : pick) {
        m.push_back(rows[i].a);
        rhs.push_back(rows[i].rhs);
      }
      auto sol = solve_square(std::move(m), std::move(rhs));
      if (!sol) return;
      for (const auto& x : *sol)
        if (abs(x) > 1) return;
      Point p(n);
      p[face.axis] = face.sign;
      for (std::size_t j = 0; j < d; ++j) p[free[j]] = (*sol)[j];
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick[slot] = i;
      choose(slot + 1, i + 1);
    }
  };
  choose(0, 0);
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CellDecomposition enumerate_cells(const MaxMinForm& F, std::optional<Face> restrict,
                                  const Limits& limits, bool parallel) {
  if (restrict && (restrict->axis >= F.n || (restrict->sign != 1 && restrict->sign != -1)))
    throw DomainError("face restriction outside the cube");
  CellDecomposition out;
  out.n = F.n;
  out.hyperplanes = arrangement_hyperplanes(F);
  if (out.hyperplanes.size() > limits.max_hyperplanes)
    throw CapExceeded("arrangement has " + std::to_string(out.hyperplanes.size()) +
                      " hyperplanes (cap " + std::to_string(limits.max_hyperplanes) + ")");
  const std::size_t n = F.n;
  const auto& hs = out.hyperplanes;

  VertexTable table;
  for (std::size_t k = 0; k < n; ++k)
    for (int s : {-1, 1}) {
      auto verts = face_vertices(hs, n, {k, s});
      table.points.insert(table.points.end(), verts.begin(), verts.end());
    }
  std::sort(table.points.begin(), table.points.end(), lex_less);
  table.points.erase(std::unique(table.points.begin(), table.points.end()), table.points.end());
  const std::size_t nv = table.points.size();
  for (auto* sets : {&table.strict_neg, &table.strict_pos, &table.weak_neg, &table.weak_pos})
    sets->assign(hs.size(), VertexSet(nv));
  for (std::size_t h = 0; h < hs.size(); ++h)
    for (std::size_t v = 0; v < nv; ++v) {
      int s = sign_of(hs[h](table.points[v]));
      if (s < 0) table.strict_neg[h].set(v);
      if (s > 0) table.strict_pos[h].set(v);
      if (s <= 0) table.weak_neg[h].set(v);
      if (s >= 0) table.weak_pos[h].set(v);
    }

  // Coordinate hyperplanes come first, so the depth-n nodes are the orthants.
  VertexSet everything(nv);
  for (std::size_t v = 0; v < nv; ++v) everything.set(v);
  std::vector<SearchNode> roots;
  search(table, n, {{}, everything}, roots);
  if (restrict)
    roots.erase(std::remove_if(roots.begin(), roots.end(),
                               [&](const SearchNode& r) { return r.signs[restrict->axis] != restrict->sign; }),
                roots.end());
  std::vector<std::vector<SearchNode>> found(roots.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(roots.size()); ++i)
    search(table, hs.size(), roots[i], found[i]);

  std::vector<VertexSet> closures;
  for (auto& bucket : found)
    for (auto& node : bucket) {
      Cell c;
      c.signs = std::move(node.signs);
      out.cells.push_back(std::move(c));
      closures.push_back(std::move(node.closure));
    }
  std::vector<std::size_t> order(out.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.cells[a].signs < out.cells[b].signs; });
  {
    std::vector<Cell> sorted;
    std::vector<VertexSet> sorted_closures;
    for (auto i : order) {
      sorted.push_back(std::move(out.cells[i]));
      sorted_closures.push_back(std::move(closures[i]));
    }
    out.cells = std::move(sorted);
    closures = std::move(sorted_closures);
  }

  const auto forms = F.distinct_forms();
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.cells.size()); ++i) {
    Cell& c = out.cells[i];
    // A strictly positive combination of all generators of a pointed cone is interior.
    Point centre(n, 0);
    for (std::size_t v = 0; v < nv; ++v)
      if (closures[i].test(v)) {
        for (std::size_t k = 0; k < n; ++k) centre[k] += table.points[v][k];
        if (!restrict || table.points[v][restrict->axis] == restrict->sign)
          c.vertices.push_back(table.points[v]);
      }
    c.witness = to_unit_face(std::move(centre));
    const Rational value = F(c.witness);
    for (const auto& f : forms)
      if (f(c.witness) == value) {
        c.active = f;
        break;
      }
  }
  return out;
}

std::vector<LinearityRegion> linearity_regions(const CellDecomposition& decomposition) {
  const auto& cells = decomposition.cells;
  std::vector<std::size_t> parent(cells.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!(cells[i].active == cells[j].active)) continue;
      std::size_t differ = 0;
      for (std::size_t h = 0; h < cells[i].signs.size() && differ < 2; ++h)
        if (cells[i].signs[h] != cells[j].signs[h]) ++differ;
      if (differ == 1) parent[root(i)] = root(j);
    }
  std::vector<LinearityRegion> out;
  std::vector<std::size_t> slot(cells.size(), cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto r = root(i);
    if (slot[r] == cells.size()) {
      slot[r] = out.size();
      out.push_back({cells[i].active, {}});
    }
    out[slot[r]].cells.push_back(i);
  }
  return out;
}

ZeroTest semantic_zero_test(const Expr& f, const Limits& limits) {
  auto F = to_maxmin(f, limits);
  auto forms = F.distinct_forms();
  if (forms.size() == 1 && forms.front().is_zero()) return {};
  auto cells = enumerate_cells(F, std::nullopt, limits);
  for (const auto& c : cells.cells)
    if (!c.active.is_zero()) return {false, c.witness};
  return {};
}

bool is_semantically_zero(const Expr& f, const Limits& limits) {
  return semantic_zero_test(f, limits).zero;
}

bool semantically_equal(const Expr& a, const Expr& b, const Limits& limits) {
  return is_semantically_zero(a - b, limits);
}

SupNormResult sup_norm(const Expr& f, const Limits& limits) {
  auto F = to_maxmin(f, limits);
  auto cells = enumerate_cells(F, std::nullopt, limits);
  SupNormResult best;
  bool have = false;
  for (const auto& c : cells.cells)
    for (const auto& v : c.vertices) {
      Rational val = abs(c.active(v));
      if (!have || val > best.value || (val == best.value && lex_less(v, best.witness))) {
        best.value = val;
        best.witness = v;
        have = true;
      }
    }
  return best;
}

}  // namespace fbl
