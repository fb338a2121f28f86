#include "fbl/parser.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "fbl/errors.hpp"

namespace fbl {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(std::string_view token) {
    skip_ws();
    return text_.substr(pos_, token.size()) == token;
  }

  bool accept(std::string_view token) {
    if (!at(token)) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  // digits ('/' digits)?  -- a '/' followed by '\' is the meet operator, not a fraction.
  Rational number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  Expr parse_sum() {
    Expr e = parse_join();
    for (;;) {
      if (accept("+"))
        e = Expr::sum(e, parse_join());
      else if (accept("-"))
        e = Expr::sum(e, Expr::neg(parse_join()));
      else
        return e;
    }
  }

  Expr parse_join() {
    Expr e = parse_meet();
    while (at_join()) {
      ++pos_;
      e = Expr::join(e, parse_meet());
    }
    return e;
  }

  // 'v' is only an operator when it is not glued to an identifier character.
  bool at_join() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != 'v') return false;
    if (pos_ + 1 < text_.size()) {
      char next = text_[pos_ + 1];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    }
    return true;
  }

  Expr parse_meet() {
    Expr e = parse_unary();
    while (accept("/\\")) e = Expr::meet(e, parse_unary());
    return e;
  }

  // Tries "number *" or "( -number ) *" and rewinds when it does not match.
  std::optional<Rational> coefficient() {
    std::size_t saved = pos_;
    skip_ws();
    if (at_digit()) {
      Rational c = number();
      if (accept("*")) return c;
      pos_ = saved;
      return std::nullopt;
    }
    if (accept("(")) {
      bool negative = accept("-");
      if (at_digit()) {
        Rational c = number();
        if (accept(")") && accept("*")) return negative ? Rational(-c) : c;
      }
    }
    pos_ = saved;
    return std::nullopt;
  }

  Expr parse_unary() {
    if (accept("-")) return Expr::neg(parse_unary());
    if (auto c = coefficient()) return Expr::scale(*c, parse_unary());
    return parse_primary();
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == 'x') {
      std::size_t start = pos_++;
      if (!at_digit_here()) fail("expected generator index after 'x'");
      std::size_t k = 0;
      while (at_digit_here()) {
        k = k * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (k > 1000000) fail("generator index too large");
        ++pos_;
      }
      if (k < 1 || k > n_) {
        pos_ = start;
        fail("generator x" + std::to_string(k) + " out of range 1.." + std::to_string(n_));
      }
      return Expr::generator(n_, k);
    }
    if (accept("(")) {
      Expr e = parse_sum();
      expect(")");
      return e;
    }
    if (accept("|")) {
      Expr e = parse_sum();
      expect("|");
      return Expr::abs(e);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      Rational v = number();
      if (sgn(v) != 0) {
        pos_ = start;
        fail("constant " + v.get_str() + " is not homogeneous; only 0 may stand alone");
      }
      return Expr::zero(n_);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  bool at_digit_here() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, std::size_t n) {
  if (n < 1) throw DimensionError("generator count must be at least 1");
  return Parser(text, n).parse();
}

}  // namespace fbl
