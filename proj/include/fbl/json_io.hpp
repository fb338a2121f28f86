#pragma once

#include <string>

#include "fbl/canonical.hpp"
#include "fbl/fdlattice.hpp"
#include "fbl/freenorm.hpp"
#include "fbl/lifting.hpp"
#include "fbl/rational.hpp"
#include "json.hpp"

// JSON encodings shared by the command line front end and the tests.
// Rationals are strings ("p/q", or "p" for integers) so no precision is lost;
// generator and coordinate indices are 1-based as in the expression grammar.

namespace fbl {

using nlohmann::json;

json rational_json(const Rational& r);
/// Accepts strings in the parse_rational grammar and JSON integers.
Rational rational_from_json(const json& j);

json point_json(const Point& p);
Point point_from_json(const json& j);

/// "2*x1 - 1/2*x3"; the zero form prints as "0".
std::string format_form(const LinearForm& form);
/// Join of bracketed meets in the expression grammar, so parse_expr reads it back.
std::string format_maxmin(const MaxMinForm& F);
json maxmin_json(const MaxMinForm& F);

json measure_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const json& j);
json certificate_json(const NormCertificate& c);
NormCertificate certificate_from_json(const json& j);

json norm_value_json(const NormValue& v);
json hom_json(const LatticeHom& T);
json space_json(const FdBanachLattice& X);

json disjoint_lift_json(const DisjointLift& lift);
json family_lift_json(const FamilyLift& lift);
json projective_lift_json(const ProjectiveLift& lift);

}  // namespace fbl
