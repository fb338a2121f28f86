#include "fbl/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fbl/canonical.hpp"
#include "fbl/errors.hpp"
#include "fbl/freenorm.hpp"
#include "fbl/json_io.hpp"
#include "fbl/lifting.hpp"
#include "fbl/parser.hpp"
#include "fbl/symnorm.hpp"

namespace fbl::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational rational_arg(std::string_view text) {
  try {
    return parse_rational(trim(text));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::size_t index_arg(std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0)
    throw UsageError("expected a positive index, got '" + std::string(text) + "'");
  return value;
}

double real_arg(std::string_view text) {
  text = trim(text);
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw UsageError("expected a real number, got '" + std::string(text) + "'");
  return value;
}

std::string shortest(double x) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, end);
}

std::string join_text(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string vectors_text(const std::vector<Vector>& vs, const std::string& indent) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += indent + std::to_string(i + 1) + ": " + to_string(vs[i]) + "\n";
  return out;
}

std::string norm_value_text(const NormValue& v) {
  return v.exact ? to_string(*v.exact) : shortest(static_cast<double>(v.approx));
}

json index_json(const std::set<std::size_t>& s) { return json(std::vector<std::size_t>(s.begin(), s.end())); }

struct Outcome {
  json payload;
  std::string text;
};

// Options shared by the subcommands working on lattice terms.
struct TermArgs {
  std::size_t n = 0;
  Limits limits;

  void add_to(CLI::App* app) {
    app->add_option("-n,--generators", n, "Number of generators x1..xn")->required()->check(CLI::Range(1, 64));
    app->add_option("--max-hyperplanes", limits.max_hyperplanes, "Cap on arrangement hyperplanes")
        ->capture_default_str();
    app->add_option("--max-forms", limits.max_forms, "Cap on forms in the max-min rewrite")->capture_default_str();
  }
  Expr parse(const std::string& text) const { return parse_expr(text, n); }
};

// Options shared by the lifting subcommands.
struct SpaceArgs {
  std::size_t dim = 0;
  std::string norm = "l1";
  std::string ideal;
  std::string oracle = "canonical";
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--dim", dim, "Dimension m of X = R^m")->required()->check(CLI::Range(1, 64));
    app->add_option("--norm", norm, "Norm of X: l1, linf, lp:P, wl1:W.., wlinf:W..")->capture_default_str();
    app->add_option("--ideal", ideal, "Coordinates spanning the ideal J, e.g. 3,4");
    app->add_option("--oracle", oracle, "Preimage strategy")
        ->check(CLI::IsMember({"canonical", "adversarial"}))
        ->capture_default_str();
    app->add_option("--seed", seed, "Seed of the adversarial oracle")->capture_default_str();
  }
  Quotient quotient_map() const { return quotient(FdBanachLattice{dim, parse_norm_spec(norm)}, {parse_index_set(ideal)}); }
  std::unique_ptr<PreimageOracle> make_oracle() const {
    if (oracle == "adversarial") return std::make_unique<AdversarialOracle>(seed);
    return std::make_unique<CanonicalOracle>();
  }
  json describe(const Quotient& q, const PreimageOracle& o) const {
    return {{"space", space_json(q.space)}, {"ideal", index_json(parse_index_set(ideal))}, {"oracle", o.name()}};
  }
};

const char* kGrammar =
    "Terms over x1..xn: + - (sums), v (join), /\\ (meet), |e| (modulus), c*e with\n"
    "c = p or p/q (or (-p/q)), and 0. Precedence from tightest: c*, unary - and\n"
    "|.|, /\\, v, then + and -.\n"
    "Vectors: 1,-1/2,0. Norms: l1 | linf | lp:P | wl1:W1,..,Wm | wlinf:W1,..,Wm.\n"
    "Exit status: 0 ok, 1 domain error, 2 usage error.";

class Dispatcher {
 public:
  Dispatcher() : app_("Exact computations in finitely generated free Banach lattices", "fbl") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.footer(kGrammar);
    app_.add_flag("--json", json_, "Emit a CommandResult JSON document");
    add_canon();
    add_eval();
    add_equal();
    add_norm();
    add_dual_norm();
    add_quotient_norm();
    add_project();
    add_lift_disjoint();
    add_lift_families();
    add_projlift();
    add_symnorm();
  }

  CLI::App& app() { return app_; }
  bool json_mode() const { return json_; }
  Outcome dispatch() {
    for (auto& [sub, handler] : handlers_)
      if (sub->parsed()) return handler();
    throw UsageError("no subcommand given");
  }
  std::string command() const {
    for (const auto& [sub, handler] : handlers_)
      if (sub->parsed()) return sub->get_name();
    return "";
  }
  std::string help_for_parsed() {
    for (auto& [sub, handler] : handlers_)
      if (sub->parsed()) return sub->help();
    return app_.help();
  }

 private:
  CLI::App* sub(const std::string& name, const std::string& description, std::function<Outcome()> handler) {
    auto* s = app_.add_subcommand(name, description);
    handlers_.emplace_back(s, std::move(handler));
    return s;
  }

  void add_canon() {
    auto* s = sub("canon", "Rewrite a term into max-min normal form", [this] {
      const auto f = terms_.parse(expr_);
      const auto F = to_maxmin(f, terms_.limits);
      return Outcome{{{"n", terms_.n}, {"expression", expr_}, {"form", maxmin_json(F)}},
                     format_maxmin(F) + "\n"};
    });
    terms_.add_to(s);
    s->add_option("expression", expr_, "Lattice term")->required();
  }

  void add_eval() {
    auto* s = sub("eval", "Evaluate a term at a point", [this] {
      const auto f = terms_.parse(expr_);
      const auto xi = parse_vector(point_);
      const auto value = eval(f, xi);
      return Outcome{{{"n", terms_.n}, {"expression", expr_}, {"point", point_json(xi)}, {"value", rational_json(value)}},
                     to_string(value) + "\n"};
    });
    terms_.add_to(s);
    s->add_option("expression", expr_, "Lattice term")->required();
    s->add_option("--at", point_, "Point, e.g. 1,-1/2")->required();
  }

  void add_equal() {
    auto* s = sub("equal", "Decide whether two terms define the same function", [this] {
      const auto a = terms_.parse(expr_), b = terms_.parse(other_);
      const auto test = semantic_zero_test(a - b, terms_.limits);
      json witness = test.witness ? point_json(*test.witness) : json(nullptr);
      std::string text = test.zero ? "true\n" : "false\n";
      if (test.witness) text += "differ at " + to_string(*test.witness) + "\n";
      return Outcome{{{"n", terms_.n}, {"left", expr_}, {"right", other_}, {"equal", test.zero}, {"witness", witness}},
                     text};
    });
    terms_.add_to(s);
    s->add_option("left", expr_, "First term")->required();
    s->add_option("right", other_, "Second term")->required();
  }

  void add_norm() {
    auto* s = sub("norm", "Supremum norm or free norm of a term", [this] {
      const auto f = terms_.parse(expr_);
      json payload{{"n", terms_.n}, {"expression", expr_}, {"kind", kind_}};
      std::ostringstream text;
      if (kind_ == "sup") {
        const auto r = sup_norm(f, terms_.limits);
        payload["value"] = rational_json(r.value);
        payload["witness"] = point_json(r.witness);
        text << "sup norm: " << to_string(r.value) << "\nattained at " << to_string(r.witness) << "\n";
      } else {
        FreeNormOptions options;
        options.limits = terms_.limits;
        const auto c = free_norm(f, options);
        const bool verified = verify_certificate(f, c, terms_.limits);
        payload["value"] = rational_json(c.value);
        payload["certificate"] = certificate_json(c);
        payload["verified"] = verified;
        std::vector<std::string> prices;
        for (const auto& p : c.prices) prices.push_back(to_string(p));
        text << "free norm: " << to_string(c.value) << "\n"
             << "certificate: " << (verified ? "verified" : "NOT verified") << ", " << c.iterations
             << " master solves\n"
             << "  prices: " << join_text(prices, ", ") << "\n"
             << "  primal atoms:\n";
        for (const auto& atom : c.primal.atoms)
          text << "    " << to_string(atom.point) << " weight " << to_string(atom.weight) << "\n";
      }
      return Outcome{payload, text.str()};
    });
    terms_.add_to(s);
    s->add_option("expression", expr_, "Lattice term")->required();
    s->add_option("--kind", kind_, "sup or free")->check(CLI::IsMember({"sup", "free"}))->capture_default_str();
  }

  void add_dual_norm() {
    auto* s = sub("dual-norm", "Dual free norm of an atomic measure on the cube", [this] {
      AtomicMeasure mu;
      mu.n = terms_.n;
      for (const auto& text : atoms_) {
        auto colon = text.rfind(':');
        if (colon == std::string::npos) throw UsageError("atom '" + text + "' needs the form POINT:WEIGHT");
        mu.atoms.push_back({parse_vector(std::string_view(text).substr(0, colon)),
                            rational_arg(std::string_view(text).substr(colon + 1))});
      }
      mu.validate();
      const auto value = dual_norm(mu);
      return Outcome{{{"n", terms_.n}, {"measure", measure_json(mu)}, {"value", rational_json(value)}},
                     to_string(value) + "\n"};
    });
    terms_.add_to(s);
    s->add_option("--atom", atoms_, "POINT:WEIGHT, e.g. 1,-1/2:3 (repeatable)");
  }

  void add_quotient_norm() {
    auto* s = sub("quotient-norm", "Norm of f modulo the functions vanishing on a finite set", [this] {
      const auto f = terms_.parse(expr_);
      std::vector<Point> A;
      json points = json::array();
      for (const auto& text : points_) {
        A.push_back(parse_vector(text));
        points.push_back(point_json(A.back()));
      }
      const auto value = quotient_norm(f, A);
      return Outcome{{{"n", terms_.n}, {"expression", expr_}, {"points", points}, {"value", rational_json(value)}},
                     to_string(value) + "\n"};
    });
    terms_.add_to(s);
    s->add_option("expression", expr_, "Lattice term")->required();
    s->add_option("--point", points_, "Point of the cube boundary (repeatable)")->required();
  }

  void add_project() {
    auto* s = sub("project", "Projection P_B: generators outside B become 0", [this] {
      const auto f = terms_.parse(expr_);
      const auto keep = parse_index_set(keep_);
      const auto g = project_onto(f, keep);
      const auto G = to_maxmin(g, terms_.limits);
      return Outcome{{{"n", terms_.n},
                      {"expression", expr_},
                      {"keep", index_json(keep)},
                      {"result", to_string(g)},
                      {"form", maxmin_json(G)}},
                     to_string(g) + "\n= " + format_maxmin(G) + "\n"};
    });
    terms_.add_to(s);
    s->add_option("expression", expr_, "Lattice term")->required();
    s->add_option("--keep", keep_, "Generators to keep, e.g. 1,3")->required();
  }

  void add_lift_disjoint() {
    auto* s = sub("lift-disjoint", "Lift disjoint positive vectors of X/J to disjoint vectors of X", [this] {
      const auto q = space_.quotient_map();
      auto oracle = space_.make_oracle();
      std::vector<Vector> ys;
      for (const auto& text : vectors_) ys.push_back(parse_vector(text));
      const auto lift = lift_disjoint(q, ys, *oracle);
      json payload = space_.describe(q, *oracle);
      json ys_json = json::array();
      for (const auto& y : ys) ys_json.push_back(point_json(y));
      payload["ys"] = ys_json;
      payload["lift"] = disjoint_lift_json(lift);
      return Outcome{payload, "lifts (" + oracle->name() + " oracle):\n" + vectors_text(lift.xs, "  ")};
    });
    space_.add_to(s);
    s->add_option("--y", vectors_, "Vector of X/J (repeatable, in order)");
  }

  void add_lift_families() {
    auto* s = sub("lift-families", "Lift mutually disjoint families of positive vectors of X/J", [this] {
      const auto q = space_.quotient_map();
      auto oracle = space_.make_oracle();
      std::vector<std::vector<Vector>> families;
      json in = json::array();
      for (const auto& text : vectors_) {
        std::vector<Vector> family;
        json members = json::array();
        if (!trim(text).empty())
          for (auto part : split(text, ';')) {
            family.push_back(parse_vector(part));
            members.push_back(point_json(family.back()));
          }
        families.push_back(std::move(family));
        in.push_back(members);
      }
      const auto lift = lift_disjoint_families(q, families, *oracle);
      json payload = space_.describe(q, *oracle);
      payload["families"] = in;
      payload["lift"] = family_lift_json(lift);
      std::string text = "lifted families (" + oracle->name() + " oracle):\n";
      for (std::size_t n = 0; n < lift.families.size(); ++n)
        text += "  family " + std::to_string(n + 1) + ":\n" + vectors_text(lift.families[n], "    ");
      return Outcome{payload, text};
    });
    space_.add_to(s);
    s->add_option("--family", vectors_, "Vectors of one family separated by ';' (repeatable)");
  }

  void add_projlift() {
    auto* s = sub("projlift", "Lift a lattice homomorphism T: P -> X/J to S: P -> X", [this] {
      const auto q = space_.quotient_map();
      auto oracle = space_.make_oracle();
      const FdBanachLattice P{domain_dim_, parse_norm_spec(domain_norm_)};
      const auto T = parse_hom(hom_, domain_dim_);
      const auto eps = rational_arg(eps_);
      ProjectiveLiftOptions options;
      options.max_net_points = max_net_points_;
      const auto lift = projective_lift(T, P, q, eps, *oracle, options);
      json payload = space_.describe(q, *oracle);
      payload["domain"] = space_json(P);
      payload["T"] = hom_json(T);
      payload["eps"] = rational_json(eps);
      payload["lift"] = projective_lift_json(lift);
      std::ostringstream text;
      text << "S e_k (" << oracle->name() << " oracle):\n"
           << vectors_text(lift.z, "  ") << "||T|| = " << norm_value_text(lift.T_norm)
           << "\n||S|| = " << norm_value_text(lift.S_norm) << "\nnet: " << lift.net_size << " points, mesh "
           << lift.mesh << ", covering radius <= " << to_string(lift.covering_bound) << "\n";
      return Outcome{payload, text.str()};
    });
    space_.add_to(s);
    s->add_option("--domain-dim", domain_dim_, "Dimension p of the domain P")->required()->check(CLI::Range(1, 16));
    s->add_option("--domain-norm", domain_norm_, "Norm of P")->capture_default_str();
    s->add_option("--hom", hom_, "Rows of T: SOURCE:SCALE or 0 per coordinate of X/J, e.g. 1:1,2:2")->required();
    s->add_option("--eps", eps_, "Allowed norm excess, a positive rational")->required();
    s->add_option("--max-net-points", max_net_points_, "Cap on the net size")->capture_default_str();
  }

  void add_symnorm() {
    auto* s = sub("symnorm", "Dual and rotation-averaged free norms of measures on the circle", [this] {
      json rows = json::array();
      std::ostringstream text;
      text << "atoms\tdual norm\tsymmetric norm\n";
      for (const auto& spec : vectors_) {
        CircleMeasure mu;
        json atoms = json::array();
        if (!trim(spec).empty())
          for (auto part : split(spec, ',')) {
            auto colon = part.find(':');
            if (colon == std::string_view::npos)
              throw UsageError("circle atom '" + std::string(part) + "' needs the form ANGLE:WEIGHT");
            mu.atoms.push_back({real_arg(part.substr(0, colon)), real_arg(part.substr(colon + 1))});
            atoms.push_back({{"angle", mu.atoms.back().angle}, {"weight", mu.atoms.back().weight}});
          }
        const double dual = circle_dual_norm(mu);
        const double sym = symmetric_norm(mu, tol_);
        rows.push_back({{"atoms", atoms}, {"dual_norm", dual}, {"symmetric_norm", sym}});
        text << spec << "\t" << shortest(dual) << "\t" << shortest(sym) << "\n";
      }
      return Outcome{{{"tol", tol_}, {"rows", rows}}, text.str()};
    });
    s->add_option("--atoms", vectors_, "One measure as ANGLE:WEIGHT,... with angles in radians (repeatable)")
        ->required();
    s->add_option("--tol", tol_, "Accuracy of the symmetric norm")->capture_default_str();
  }

  CLI::App app_;
  bool json_ = false;
  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> handlers_;

  TermArgs terms_;
  SpaceArgs space_;
  std::string expr_, other_, point_, kind_ = "sup", keep_, hom_, eps_, domain_norm_ = "l1";
  std::vector<std::string> atoms_, points_, vectors_;
  std::size_t domain_dim_ = 0, max_net_points_ = ProjectiveLiftOptions{}.max_net_points;
  double tol_ = 1e-9;
};

json result(const std::string& command, const std::string& status, json payload,
            const std::vector<std::string>& diagnostics) {
  return {{"status", status}, {"command", command}, {"payload", std::move(payload)}, {"diagnostics", diagnostics}};
}

}  // namespace

Vector parse_vector(std::string_view text) {
  if (trim(text).empty()) throw UsageError("empty vector");
  Vector v;
  for (auto part : split(text, ',')) v.push_back(rational_arg(part));
  return v;
}

std::set<std::size_t> parse_index_set(std::string_view text) {
  std::set<std::size_t> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.insert(index_arg(part));
  return out;
}

NormSpec parse_norm_spec(std::string_view text) {
  text = trim(text);
  if (text == "l1") return NormSpec::l1();
  if (text == "linf") return NormSpec::linf();
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto head = text.substr(0, colon), body = text.substr(colon + 1);
    if (head == "lp") return NormSpec::lp(rational_arg(body));
    if (head == "wl1") return NormSpec::weighted_l1(parse_vector(body));
    if (head == "wlinf") return NormSpec::weighted_linf(parse_vector(body));
  }
  throw UsageError("unknown norm '" + std::string(text) + "' (expected l1, linf, lp:P, wl1:W.., wlinf:W..)");
}

LatticeHom parse_hom(std::string_view text, std::size_t domain_dim) {
  const auto parts = split(text, ',');
  LatticeHom T{domain_dim, {}};
  T.rows.resize(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const auto part = trim(parts[j]);
    if (part == "0") continue;
    auto colon = part.find(':');
    if (colon == std::string_view::npos)
      throw UsageError("hom row '" + std::string(part) + "' needs the form SOURCE:SCALE or 0");
    T.rows[j] = HomRow{index_arg(part.substr(0, colon)) - 1, rational_arg(part.substr(colon + 1))};
  }
  return T;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();
  Dispatcher d;
  std::vector<std::string> storage{"fbl"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  auto fail = [&](int code, const std::string& message, const std::string& usage) {
    if (json_requested) out << result(d.command(), "error", nullptr, {message}).dump(2) << "\n";
    err << "error: " << message << "\n";
    if (!usage.empty()) err << "\n" << usage;
    return code;
  };

  try {
    d.app().parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << d.help_for_parsed();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << d.app().help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(kExitUsage, e.what(), d.help_for_parsed());
  }

  try {
    Outcome outcome = d.dispatch();
    if (d.json_mode())
      out << result(d.command(), "ok", std::move(outcome.payload), {}).dump(2) << "\n";
    else
      out << outcome.text;
    return kExitOk;
  } catch (const UsageError& e) {
    return fail(kExitUsage, e.what(), d.help_for_parsed());
  } catch (const Error& e) {
    return fail(kExitDomain, e.what(), "");
  } catch (const std::exception& e) {
    return fail(kExitDomain, std::string("internal error: ") + e.what(), "");
  }
}

}  // namespace fbl::cli
