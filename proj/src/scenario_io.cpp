#include "lqt/scenario_io.hpp"

#include "lqt/error.hpp"

namespace lqt {

Json rational_to_json(const Rational& q)
{
    return format_rational(q);
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(Integer(std::to_string(j.get<long long>())));
    }
    throw ConfigError("expected a rational string, got " + j.dump());
}

Json basis_to_json(const RealBasis& basis)
{
    Json out = Json::array();
    for (const auto& label : basis.labels()) {
        if (label == "one") {
            out.push_back("one");
        } else if (label.rfind("sqrt(", 0) == 0) {
            out.push_back(Json{{"sqrt", std::stoul(label.substr(5, label.size() - 6))}});
        } else {
            throw ConfigError("generator '" + label + "' has no JSON form");
        }
    }
    return out;
}

BasisPtr basis_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw ConfigError("basis must be a non-empty array");
    }
    std::vector<std::shared_ptr<const IntervalOracle>> gens;
    for (const auto& g : j) {
        if (g == "one") {
            gens.push_back(make_one_oracle());
        } else if (g.is_object() && g.contains("sqrt") && g["sqrt"].is_number_unsigned()) {
            const auto n = g["sqrt"].get<unsigned long>();
            if (n < 2) {
                throw ConfigError("sqrt generator needs n >= 2");
            }
            gens.push_back(make_sqrt_oracle(n));
        } else {
            throw ConfigError("bad basis generator " + g.dump());
        }
    }
    // Reuse the shared default basis when the generators match it, so values
    // built here and by the gallery can be mixed.
    const auto def = RealBasis::default_basis(gens.size());
    auto basis = std::make_shared<const RealBasis>(std::move(gens));
    return basis->same_as(*def) ? def : BasisPtr(basis);
}

Json value_to_json(const ValueVector& v)
{
    Json out = Json::array();
    for (const auto& c : v.coefficients()) {
        out.push_back(rational_to_json(c));
    }
    return out;
}

ValueVector value_from_json(const BasisPtr& basis, const Json& j)
{
    if (!j.is_array()) {
        // A bare rational denotes q * 1.
        return ValueVector::rational(basis, rational_from_json(j));
    }
    if (j.size() != basis->size()) {
        throw ConfigError("value " + j.dump() + " has the wrong number of coefficients");
    }
    std::vector<Rational> coeffs;
    for (const auto& c : j) {
        coeffs.push_back(rational_from_json(c));
    }
    return ValueVector(basis, coeffs);
}

Json interval_to_json(const ValueVector& v, const Rational& width)
{
    const auto iv = value_to_interval(v, width);
    return Json::array({format_rational(iv.lo), format_rational(iv.hi)});
}

Json monomial_to_json(const Monomial& m)
{
    return Json(m.exponents());
}

Monomial monomial_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw ConfigError("monomial must be a non-empty exponent array");
    }
    std::vector<Exponent> e;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) {
            throw ConfigError("bad exponent " + x.dump());
        }
        e.push_back(x.get<Exponent>());
    }
    return Monomial(std::move(e));
}

Json ideal_to_json(const MonomialIdeal& ideal)
{
    Json out = Json::array();
    for (const auto& g : ideal.generators()) {
        out.push_back(monomial_to_json(g));
    }
    return out;
}

namespace {

const std::vector<std::pair<ScenarioKind, std::string>>& kind_names()
{
    static const std::vector<std::pair<ScenarioKind, std::string>> names{
        {ScenarioKind::ShannonType, "shannon"}, {ScenarioKind::NotUnionRR1, "rr1"},
        {ScenarioKind::Divergent2, "divergent-2"}, {ScenarioKind::Divergent3, "divergent-3"},
        {ScenarioKind::Dvr, "dvr"}, {ScenarioKind::RandomIndependent, "random"},
        {ScenarioKind::Custom, "custom"}};
    return names;
}

std::string kind_to_string(ScenarioKind k)
{
    for (const auto& [kind, name] : kind_names()) {
        if (kind == k) {
            return name;
        }
    }
    return "custom";
}

ScenarioKind kind_from_string(const std::string& s)
{
    for (const auto& [kind, name] : kind_names()) {
        if (name == s) {
            return kind;
        }
    }
    throw ConfigError("unknown scenario kind '" + s + "'");
}

// A direction is an index or a variable name.
Direction direction_from_json(const Json& j, const std::vector<std::string>& names)
{
    if (j.is_number_unsigned()) {
        const auto d = j.get<Direction>();
        if (d >= names.size()) {
            throw ConfigError("direction " + j.dump() + " out of range");
        }
        return d;
    }
    if (j.is_string()) {
        for (Direction i = 0; i < names.size(); ++i) {
            if (names[i] == j.get<std::string>()) {
                return i;
            }
        }
    }
    throw ConfigError("bad direction " + j.dump());
}

Json values_to_json(const std::vector<ValueVector>& values)
{
    Json out = Json::array();
    for (const auto& v : values) {
        out.push_back(value_to_json(v));
    }
    return out;
}

std::vector<ValueVector> values_from_json(const BasisPtr& basis, const Json& j, std::size_t d)
{
    if (!j.is_array() || j.size() != d) {
        throw ConfigError("expected " + std::to_string(d) + " values, got " + j.dump());
    }
    std::vector<ValueVector> out;
    for (const auto& v : j) {
        out.push_back(value_from_json(basis, v));
    }
    return out;
}

std::size_t count_from_json(const Json& j, const char* what)
{
    if (!j.is_number_unsigned()) {
        throw ConfigError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

} // namespace

Json scenario_to_json(const Scenario& s)
{
    Json out;
    out["name"] = s.name;
    out["kind"] = kind_to_string(s.kind);
    out["basis"] = basis_to_json(*s.frame.basis());
    out["names"] = s.frame.names;
    out["frame"] = values_to_json(s.frame.values);
    Json plan = Json::array();
    for (const auto& step : s.plan) {
        Json p;
        switch (step.kind) {
        case PlanStep::Kind::Monomial:
            p["monomial"] = step.dir;
            p["repeat"] = step.repeat.get_str();
            break;
        case PlanStep::Kind::Rescale:
            p["rescale"] = values_to_json(step.values);
            p["dir"] = step.rescale_dir ? Json(*step.rescale_dir) : Json(nullptr);
            break;
        case PlanStep::Kind::Argmin:
            p["argmin"] = step.count;
            p["reset_on_tie"] = step.reset_on_tie;
            break;
        }
        plan.push_back(std::move(p));
    }
    out["plan"] = std::move(plan);
    Json cps = Json::array();
    for (const auto& c : s.checkpoints) {
        cps.push_back(Json{{"after", c.after}, {"partial_sum", rational_to_json(c.partial_sum)}});
    }
    out["checkpoints"] = std::move(cps);
    out["limit"] = s.limit ? rational_to_json(*s.limit) : Json(nullptr);
    Json groups = Json::array();
    for (const auto& g : s.groups) {
        groups.push_back(Json{{"plan_index", g.plan_index}, {"sum", rational_to_json(g.sum)}});
    }
    out["groups"] = std::move(groups);
    out["idle_direction"] = s.idle_direction ? Json(*s.idle_direction) : Json(nullptr);
    out["small_by_step"] = s.small_by_step ? Json(*s.small_by_step) : Json(nullptr);
    return out;
}

Scenario scenario_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ConfigError("scenario must be an object");
    }
    Scenario s;
    s.name = j.value("name", std::string("custom"));
    s.kind = kind_from_string(j.value("kind", std::string("custom")));
    if (!j.contains("frame")) {
        throw ConfigError("scenario needs a frame");
    }
    const BasisPtr basis = j.contains("basis") ? basis_from_json(j["basis"]) : RealBasis::rational();
    const Json& frame = j["frame"];
    if (!frame.is_array() || frame.size() < 2) {
        throw ConfigError("frame needs at least two values");
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
        names = j["names"].get<std::vector<std::string>>();
    }
    try {
        s.frame = make_frame(values_from_json(basis, frame, frame.size()), names);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const std::size_t d = s.frame.dimension();
    names = s.frame.names;

    if (j.contains("plan")) {
        for (const auto& p : j["plan"]) {
            if (p.contains("monomial")) {
                Integer repeat = 1;
                if (p.contains("repeat")) {
                    repeat = p["repeat"].is_string() ? Integer(p["repeat"].get<std::string>())
                                                     : Integer(std::to_string(count_from_json(p["repeat"], "repeat")));
                }
                if (repeat < 1) {
                    throw ConfigError("repeat must be positive");
                }
                s.plan.push_back(PlanStep::monomial(direction_from_json(p["monomial"], names), repeat));
            } else if (p.contains("rescale")) {
                std::optional<Direction> dir;
                if (p.contains("dir") && !p["dir"].is_null()) {
                    dir = direction_from_json(p["dir"], names);
                }
                s.plan.push_back(PlanStep::rescale(dir, values_from_json(basis, p["rescale"], d)));
            } else if (p.contains("argmin")) {
                s.plan.push_back(PlanStep::argmin(count_from_json(p["argmin"], "argmin"),
                                                  p.value("reset_on_tie", false)));
            } else {
                throw ConfigError("bad plan step " + p.dump());
            }
        }
    }
    if (j.contains("checkpoints")) {
        for (const auto& c : j["checkpoints"]) {
            s.checkpoints.push_back({count_from_json(c.at("after"), "after"), rational_from_json(c.at("partial_sum"))});
        }
    }
    if (j.contains("limit") && !j["limit"].is_null()) {
        s.limit = rational_from_json(j["limit"]);
    }
    if (j.contains("groups")) {
        for (const auto& g : j["groups"]) {
            s.groups.push_back({count_from_json(g.at("plan_index"), "plan_index"), rational_from_json(g.at("sum"))});
        }
    }
    if (j.contains("idle_direction") && !j["idle_direction"].is_null()) {
        s.idle_direction = direction_from_json(j["idle_direction"], names);
    }
    if (j.contains("small_by_step") && !j["small_by_step"].is_null()) {
        s.small_by_step = count_from_json(j["small_by_step"], "small_by_step");
    }
    for (const auto& c : s.checkpoints) {
        if (c.after >= s.plan.size()) {
            throw ConfigError("checkpoint after plan step " + std::to_string(c.after) + " is past the plan");
        }
    }
    for (const auto& g : s.groups) {
        if (g.plan_index >= s.plan.size() || s.plan[g.plan_index].kind != PlanStep::Kind::Monomial) {
            throw ConfigError("group must name a monomial plan step");
        }
    }
    return s;
}

} // namespace lqt
