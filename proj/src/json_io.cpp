#include "fbl/json_io.hpp"

#include <stdexcept>

#include "fbl/errors.hpp"

namespace fbl {

json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw DomainError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
}

json point_json(const Point& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(rational_json(c));
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected an array of rationals, got " + j.dump());
  Point p;
  for (const auto& c : j) p.push_back(rational_from_json(c));
  return p;
}

std::string format_form(const LinearForm& form) {
  std::string out;
  for (std::size_t k = 0; k < form.coeffs.size(); ++k) {
    const Rational& c = form.coeffs[k];
    if (sgn(c) == 0) continue;
    const Rational size = abs(c);
    if (out.empty())
      out += sgn(c) < 0 ? "-" : "";
    else
      out += sgn(c) < 0 ? " - " : " + ";
    if (size != 1) out += to_string(size) + "*";
    out += "x" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

std::string format_maxmin(const MaxMinForm& F) {
  if (F.groups.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < F.groups.size(); ++i) {
    if (i) out += " v ";
    std::string meet;
    for (std::size_t j = 0; j < F.groups[i].size(); ++j) {
      if (j) meet += " /\\ ";
      meet += "(" + format_form(F.groups[i][j]) + ")";
    }
    out += F.groups.size() > 1 && F.groups[i].size() > 1 ? "(" + meet + ")" : meet;
  }
  return out;
}

json maxmin_json(const MaxMinForm& F) {
  json groups = json::array();
  for (const auto& group : F.groups) {
    json forms = json::array();
    for (const auto& form : group) forms.push_back(point_json(form.coeffs));
    groups.push_back(forms);
  }
  return {{"n", F.n}, {"groups", groups}, {"text", format_maxmin(F)}};
}

json measure_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& atom : mu.atoms)
    atoms.push_back({{"point", point_json(atom.point)}, {"weight", rational_json(atom.weight)}});
  return {{"n", mu.n}, {"atoms", atoms}};
}

AtomicMeasure measure_from_json(const json& j) {
  AtomicMeasure mu;
  mu.n = j.at("n").get<std::size_t>();
  for (const auto& atom : j.at("atoms"))
    mu.atoms.push_back({point_from_json(atom.at("point")), rational_from_json(atom.at("weight"))});
  return mu;
}

json certificate_json(const NormCertificate& c) {
  return {{"value", rational_json(c.value)},
          {"primal", measure_json(c.primal)},
          {"prices", point_json(c.prices)},
          {"iterations", c.iterations}};
}

NormCertificate certificate_from_json(const json& j) {
  NormCertificate c;
  c.value = rational_from_json(j.at("value"));
  c.primal = measure_from_json(j.at("primal"));
  c.prices = point_from_json(j.at("prices"));
  c.iterations = j.at("iterations").get<std::size_t>();
  return c;
}

json norm_value_json(const NormValue& v) {
  return {{"approx", static_cast<double>(v.approx)},
          {"exact", v.exact ? rational_json(*v.exact) : json(nullptr)},
          {"upper", rational_json(v.upper())}};
}

json hom_json(const LatticeHom& T) {
  json rows = json::array();
  for (const auto& row : T.rows) {
    if (row)
      rows.push_back({{"source", row->source + 1}, {"scale", rational_json(row->scale)}});
    else
      rows.push_back(nullptr);
  }
  return {{"domain_dim", T.domain_dim}, {"rows", rows}};
}

json space_json(const FdBanachLattice& X) { return {{"dim", X.dim}, {"norm", to_string(X.norm)}}; }

namespace {

json vectors_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(point_json(v));
  return out;
}

}  // namespace

json disjoint_lift_json(const DisjointLift& lift) {
  json trace = json::array();
  for (const auto& step : lift.trace)
    trace.push_back({{"x_tilde", point_json(step.x_tilde)},
                     {"u_tilde", point_json(step.u_tilde)},
                     {"meet", point_json(step.meet)},
                     {"x", point_json(step.x)},
                     {"u", point_json(step.u)}});
  return {{"xs", vectors_json(lift.xs)}, {"trace", trace}};
}

json family_lift_json(const FamilyLift& lift) {
  json families = json::array();
  for (const auto& family : lift.families) families.push_back(vectors_json(family));
  return {{"families", families}, {"envelopes", vectors_json(lift.envelopes)}, {"bands", vectors_json(lift.bands)}};
}

json projective_lift_json(const ProjectiveLift& lift) {
  return {{"S", hom_json(lift.S)},
          {"T_norm", norm_value_json(lift.T_norm)},
          {"S_norm", norm_value_json(lift.S_norm)},
          {"K", rational_json(lift.K)},
          {"eps_net", rational_json(lift.eps_net)},
          {"covering_bound", rational_json(lift.covering_bound)},
          {"mesh", lift.mesh},
          {"net_size", lift.net_size},
          {"s", vectors_json(lift.s)},
          {"t", vectors_json(lift.t)},
          {"x", vectors_json(lift.x)},
          {"z", vectors_json(lift.z)}};
}

}  // namespace fbl
