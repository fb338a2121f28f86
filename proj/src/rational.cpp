#include "fbl/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fbl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num)), d);
    out.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip));
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp));
    out = Rational(whole * scale + frac, scale);
    out.canonicalize();
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(body)));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += p[i].get_str();
  }
  return s + ")";
}

Rational sup_norm(const Point& p) {
  Rational m = 0;
  for (const auto& c : p)
    if (abs(c) > m) m = abs(c);
  return m;
}

bool lex_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

Rational dot(const std::vector<Rational>& a, const Point& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

}  // namespace fbl
