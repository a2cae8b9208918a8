#pragma once

#include "lqt/gallery.hpp"
#include "lqt/monomial.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lqt {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings (plain integers also accepted on input).
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// ["one", {"sqrt": 2}, {"sqrt": 3}]
Json basis_to_json(const RealBasis& basis);
BasisPtr basis_from_json(const Json& j);

// Dense coefficient array over the basis.
Json value_to_json(const ValueVector& v);
ValueVector value_from_json(const BasisPtr& basis, const Json& j);

// Interval [lo, hi] of the given width as two rational strings.
Json interval_to_json(const ValueVector& v, const Rational& width);

Json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);
Json ideal_to_json(const MonomialIdeal& ideal);

// Scenario schema: basis, names, frame, plan, and the expectations of the
// gallery generators.
Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

} // namespace lqt
