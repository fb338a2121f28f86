#include "fbl/expr.hpp"

#include <algorithm>
#include <functional>

#include "fbl/errors.hpp"

namespace fbl {

namespace {

NodePtr make(NodeKind kind, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

void check_indices(const Node& node, std::size_t n) {
  if (node.kind == NodeKind::Generator && (node.index < 1 || node.index > n))
    throw DimensionError("generator x" + std::to_string(node.index) + " out of range 1.." +
                         std::to_string(n));
  if (node.left) check_indices(*node.left, n);
  if (node.right) check_indices(*node.right, n);
}

std::size_t same_arity(const Expr& a, const Expr& b) {
  if (a.arity() != b.arity())
    throw DimensionError("operands over " + std::to_string(a.arity()) + " and " +
                         std::to_string(b.arity()) + " generators");
  return a.arity();
}

Rational eval_node(const Node& node, const Point& xi) {
  switch (node.kind) {
    case NodeKind::Zero:
      return 0;
    case NodeKind::Generator:
      return xi[node.index - 1];
    case NodeKind::Scale:
      return node.coeff * eval_node(*node.left, xi);
    case NodeKind::Sum:
      return eval_node(*node.left, xi) + eval_node(*node.right, xi);
    case NodeKind::Neg:
      return -eval_node(*node.left, xi);
    case NodeKind::Join:
      return std::max(eval_node(*node.left, xi), eval_node(*node.right, xi));
    case NodeKind::Meet:
      return std::min(eval_node(*node.left, xi), eval_node(*node.right, xi));
    case NodeKind::Abs:
      return fbl::abs(eval_node(*node.left, xi));
  }
  return 0;
}

NodePtr substitute(const NodePtr& node, const std::set<std::size_t>& keep, const NodePtr& zero) {
  switch (node->kind) {
    case NodeKind::Zero:
      return node;
    case NodeKind::Generator:
      return keep.count(node->index) ? node : zero;
    default:
      break;
  }
  auto l = node->left ? substitute(node->left, keep, zero) : nullptr;
  auto r = node->right ? substitute(node->right, keep, zero) : nullptr;
  if (l == node->left && r == node->right) return node;
  auto copy = std::make_shared<Node>(*node);
  copy->left = std::move(l);
  copy->right = std::move(r);
  return copy;
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Zero:
      return true;
    case NodeKind::Generator:
      return a.index == b.index;
    case NodeKind::Scale:
      return a.coeff == b.coeff && nodes_equal(*a.left, *b.left);
    case NodeKind::Neg:
    case NodeKind::Abs:
      return nodes_equal(*a.left, *b.left);
    default:
      return nodes_equal(*a.left, *b.left) && nodes_equal(*a.right, *b.right);
  }
}

// Binding strength used by the printer; mirrors the parser's grammar levels.
int level(const Node& node) {
  switch (node.kind) {
    case NodeKind::Sum:
      return 1;
    case NodeKind::Join:
      return 2;
    case NodeKind::Meet:
      return 3;
    case NodeKind::Scale:
    case NodeKind::Neg:
      return 4;
    default:
      return 5;
  }
}

void print(const Node& node, std::string& out);

void print_at(const Node& node, int min_level, std::string& out) {
  if (level(node) < min_level) {
    out += '(';
    print(node, out);
    out += ')';
  } else {
    print(node, out);
  }
}

void print(const Node& node, std::string& out) {
  switch (node.kind) {
    case NodeKind::Zero:
      out += '0';
      return;
    case NodeKind::Generator:
      out += 'x' + std::to_string(node.index);
      return;
    case NodeKind::Scale:
      if (sgn(node.coeff) < 0)
        out += "(" + node.coeff.get_str() + ")*";
      else
        out += node.coeff.get_str() + "*";
      print_at(*node.left, 4, out);
      return;
    case NodeKind::Neg:
      out += '-';
      print_at(*node.left, 4, out);
      return;
    case NodeKind::Abs:
      out += '|';
      print(*node.left, out);
      out += '|';
      return;
    case NodeKind::Sum:
      print_at(*node.left, 1, out);
      if (node.right->kind == NodeKind::Neg) {
        out += " - ";
        print_at(*node.right->left, 2, out);
      } else {
        out += " + ";
        print_at(*node.right, 2, out);
      }
      return;
    case NodeKind::Join:
      print_at(*node.left, 2, out);
      out += " v ";
      print_at(*node.right, 3, out);
      return;
    case NodeKind::Meet:
      print_at(*node.left, 3, out);
      out += " /\\ ";
      print_at(*node.right, 4, out);
      return;
  }
}

}  // namespace

Expr::Expr(std::size_t n, NodePtr root) : n_(n), root_(std::move(root)) {
  if (n_ < 1) throw DimensionError("generator count must be at least 1");
  if (!root_) throw DomainError("null expression node");
  check_indices(*root_, n_);
}

Expr Expr::zero(std::size_t n) { return Expr(n, make(NodeKind::Zero)); }

Expr Expr::generator(std::size_t n, std::size_t k) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Generator;
  node->index = k;
  return Expr(n, std::move(node));
}

Expr Expr::scale(const Rational& c, const Expr& e) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Scale;
  node->coeff = c;
  node->left = e.root_;
  return Expr(e.n_, std::move(node));
}

Expr Expr::sum(const Expr& a, const Expr& b) {
  return Expr(same_arity(a, b), make(NodeKind::Sum, a.root_, b.root_));
}

Expr Expr::neg(const Expr& e) { return Expr(e.n_, make(NodeKind::Neg, e.root_)); }

Expr Expr::join(const Expr& a, const Expr& b) {
  return Expr(same_arity(a, b), make(NodeKind::Join, a.root_, b.root_));
}

Expr Expr::meet(const Expr& a, const Expr& b) {
  return Expr(same_arity(a, b), make(NodeKind::Meet, a.root_, b.root_));
}

Expr Expr::abs(const Expr& e) { return Expr(e.n_, make(NodeKind::Abs, e.root_)); }

Expr Expr::pos(const Expr& e) { return join(e, zero(e.n_)); }

Rational eval(const Expr& f, const Point& xi) {
  if (xi.size() != f.arity())
    throw DimensionError("point has " + std::to_string(xi.size()) + " coordinates, expected " +
                         std::to_string(f.arity()));
  return eval_node(f.root(), xi);
}

Expr project_onto(const Expr& f, const std::set<std::size_t>& keep) {
  if (keep.empty()) throw DomainError("projection onto an empty generator set");
  for (auto k : keep)
    if (k < 1 || k > f.arity())
      throw DomainError("projection index " + std::to_string(k) + " out of range 1.." +
                        std::to_string(f.arity()));
  return Expr(f.arity(), substitute(f.root_ptr(), keep, Expr::zero(f.arity()).root_ptr()));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return a.arity() == b.arity() && nodes_equal(a.root(), b.root());
}

std::size_t depth(const Expr& e) {
  std::function<std::size_t(const Node&)> rec = [&](const Node& n) -> std::size_t {
    std::size_t d = 0;
    if (n.left) d = std::max(d, rec(*n.left));
    if (n.right) d = std::max(d, rec(*n.right));
    return d + 1;
  };
  return rec(e.root());
}

std::size_t node_count(const Expr& e) {
  std::function<std::size_t(const Node&)> rec = [&](const Node& n) -> std::size_t {
    return 1 + (n.left ? rec(*n.left) : 0) + (n.right ? rec(*n.right) : 0);
  };
  return rec(e.root());
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e.root(), out);
  return out;
}

}  // namespace fbl
