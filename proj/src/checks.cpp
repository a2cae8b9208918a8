#include "lqt/checks.hpp"

#include "lqt/error.hpp"
#include "lqt/forms.hpp"
#include "lqt/videals.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace lqt {

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::NotApplicable:
        return "not-applicable";
    }
    return "fail";
}

bool RunReport::all_pass() const
{
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const CheckOutcome& o) { return o.verdict == Verdict::Pass; });
}

bool certified_independent(const ParameterFrame& frame)
{
    // Rank of the d x |basis| coefficient matrix.
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : frame.values) {
        rows.push_back(v.coefficients());
    }
    const std::size_t cols = frame.basis()->size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) {
                continue;
            }
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[r][k] -= f * rows[rank][k];
            }
        }
        ++rank;
    }
    return rank == rows.size();
}

namespace {

// ---------------------------------------------------------------- config

Monomial monomial_option(const Json& j)
{
    return monomial_from_json(j);
}

CheckOptions options_from_json(const Json& j)
{
    CheckOptions o;
    if (j.is_null()) {
        return o;
    }
    if (!j.is_object()) {
        throw ConfigError("options must be an object");
    }
    auto size = [&](const char* key, std::size_t& out) {
        if (j.contains(key)) {
            if (!j[key].is_number_unsigned()) {
                throw ConfigError(std::string(key) + " must be a non-negative integer");
            }
            out = j[key].get<std::size_t>();
        }
    };
    size("window", o.window);
    size("ratio_steps", o.ratio_steps);
    size("chain_length", o.chain_length);
    size("tau_chain", o.tau_chain);
    size("prefix_limit", o.prefix_limit);
    size("word_limit", o.word_limit);
    if (j.contains("contraction_degree")) {
        o.contraction_degree = j["contraction_degree"].get<Exponent>();
    }
    if (j.contains("ratio_f")) {
        o.ratio_f = monomial_option(j["ratio_f"]);
    }
    if (j.contains("ratio_g")) {
        o.ratio_g = monomial_option(j["ratio_g"]);
    }
    if (j.contains("ratio_eps")) {
        o.ratio_eps = rational_from_json(j["ratio_eps"]);
    }
    return o;
}

} // namespace

RunConfig config_from_json(const Json& j, std::optional<std::size_t> steps, std::optional<std::uint64_t> seed)
{
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    RunConfig cfg;
    try {
        if (!steps && j.contains("steps")) {
            if (!j["steps"].is_number_unsigned()) {
                throw ConfigError("steps must be a non-negative integer");
            }
            steps = j["steps"].get<std::size_t>();
        }
        if (!seed && j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) {
                throw ConfigError("seed must be a non-negative integer");
            }
            seed = j["seed"].get<std::uint64_t>();
        }
        const std::string mode = j.value("mode", std::string(j.contains("plan") ? "scripted" : "argmin"));
        if (mode != "argmin" && mode != "scripted") {
            throw ConfigError("mode must be argmin or scripted");
        }
        if (j.contains("preset")) {
            cfg.scenario = preset(j["preset"].get<std::string>(), steps, seed.value_or(1));
        } else {
            cfg.scenario = scenario_from_json(j);
            if (cfg.scenario.plan.empty()) {
                if (mode == "scripted") {
                    throw ConfigError("scripted mode needs a plan");
                }
                cfg.scenario.plan.push_back(PlanStep::argmin(steps.value_or(1000)));
            }
        }
        if (j.contains("dimension") && j["dimension"].get<std::size_t>() != cfg.scenario.frame.dimension()) {
            throw ConfigError("dimension does not match the frame");
        }
        if (j.contains("checks")) {
            const auto known = check_names();
            for (const auto& c : j["checks"]) {
                const auto name = c.get<std::string>();
                if (std::find(known.begin(), known.end(), name) == known.end()) {
                    throw ConfigError("unknown check '" + name + "'");
                }
                if (std::find(cfg.checks.begin(), cfg.checks.end(), name) == cfg.checks.end()) {
                    cfg.checks.push_back(name);
                }
            }
        }
        cfg.options = options_from_json(j.value("options", Json()));
        if (j.contains("output")) {
            const Json& out = j["output"];
            if (out.contains("interval_width")) {
                cfg.interval_width = rational_from_json(out["interval_width"]);
            }
            if (out.contains("trace_limit")) {
                cfg.trace_limit = out["trace_limit"].get<std::size_t>();
            }
            cfg.timings = out.value("timings", false);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(e.what());
    }
    if (cfg.interval_width <= 0) {
        throw ConfigError("interval width must be positive");
    }
    return cfg;
}

namespace {

// ---------------------------------------------------------------- helpers

std::optional<Rational> as_rational(const ValueVector& v)
{
    const auto one = v.basis()->one_index();
    Rational out = 0;
    for (const auto& [i, c] : v.sparse()) {
        if (!one || i != *one) {
            return std::nullopt;
        }
        out = c;
    }
    return out;
}

Json exact_json(const ValueVector& v)
{
    if (const auto q = as_rational(v)) {
        return rational_to_json(*q);
    }
    return value_to_json(v);
}

bool below(const ValueVector& v, const Rational& t)
{
    if (v.basis()->one_index()) {
        return value_less(v, ValueVector::rational(v.basis(), t));
    }
    return value_to_interval(v, t / 4).hi < t;
}

ValueVector frame_max(const ParameterFrame& f)
{
    ValueVector m = f.values.front();
    for (const auto& v : f.values) {
        if (value_less(m, v)) {
            m = v;
        }
    }
    return m;
}

bool only_argmin(const Scenario& s)
{
    return std::all_of(s.plan.begin(), s.plan.end(), [](const PlanStep& p) {
        return p.kind == PlanStep::Kind::Argmin && !p.reset_on_tie;
    });
}

std::string direction_name(const ParameterFrame& f, std::optional<Direction> d)
{
    return d ? f.names[*d] : std::string();
}

Json direction_set(const ParameterFrame& f, const std::set<Direction>& s)
{
    Json out = Json::array();
    for (const auto d : s) {
        out.push_back(f.names[d]);
    }
    return out;
}

// Data collected while replaying.
struct Collected {
    bool track_conservation = false;
    bool track_bound = false;
    std::optional<Integer> first_conservation_failure;
    std::optional<Integer> first_bound_failure;
    std::optional<Integer> small_at;
    std::optional<ValueVector> bound;
    std::vector<std::optional<ValueVector>> plan_sums;   // E after each plan step
};

CheckOutcome outcome(const std::string& name, Verdict v, std::string summary, Json witness = Json::object())
{
    return {name, v, std::move(summary), std::move(witness)};
}

// ---------------------------------------------------------------- checks

struct Context {
    const RunConfig& cfg;
    const SequenceState& state;
    const Collected& col;
};

CheckOutcome check_conservation(const Context& c)
{
    Json w;
    w["steps_checked"] = c.state.step().get_str();
    if (c.col.first_conservation_failure) {
        w["first_failure"] = c.col.first_conservation_failure->get_str();
        return outcome("eq631", Verdict::Fail, "conservation identity broken", w);
    }
    return outcome("eq631", Verdict::Pass, "conservation identity exact at every step", w);
}

CheckOutcome check_bound(const Context& c)
{
    if (c.state.has_rescale()) {
        return outcome("bound63", Verdict::NotApplicable,
                       "the run contains rescale steps; the bound covers monomial runs only");
    }
    const std::size_t d = c.state.dimension();
    Json w;
    w["bound"] = exact_json(*c.col.bound);
    w["bound_interval"] = interval_to_json(*c.col.bound, c.cfg.interval_width);
    const ValueVector gap = *c.col.bound - c.state.partial_sum();
    w["final_gap_interval"] = interval_to_json(gap, c.cfg.interval_width);
    w["small_at"] = c.col.small_at ? Json(c.col.small_at->get_str()) : Json(nullptr);
    if (c.col.small_at) {
        // bound - E_N = (sum of frame)/(d-1) < d * 10^-6 / (d-1)
        const Rational tol = Rational(static_cast<unsigned long>(d), 1000000 * static_cast<unsigned long>(d - 1));
        w["final_gap_certified_below"] = rational_to_json(tol);
        if (!below(gap, tol)) {
            w["final_gap_certified_below"] = nullptr;
            return outcome("bound63", Verdict::Fail, "frame small but gap not within tolerance", w);
        }
    }
    if (!certified_independent(c.state.initial_frame())) {
        w["note"] = "values not certified independent; only the inequality is meaningful";
    }
    if (c.col.first_bound_failure) {
        w["first_failure"] = c.col.first_bound_failure->get_str();
        return outcome("bound63", Verdict::Fail, "partial sum exceeds the bound", w);
    }
    return outcome("bound63", Verdict::Pass, "partial sums stay below sum/(d-1) at every step", w);
}

CheckOutcome check_switching(const Context& c)
{
    const auto& f = c.state.initial_frame();
    const Integer directed = directed_step_count(c.state);
    Json w;
    w["directed_steps"] = directed.get_str();
    if (c.cfg.scenario.idle_direction) {
        if (directed < 2) {
            return outcome("switching-witness", Verdict::NotApplicable, "fewer than two directed steps", w);
        }
        const std::set<Direction> expected{*c.cfg.scenario.idle_direction};
        // Every window when short, powers of two and the full length otherwise.
        std::vector<Integer> windows;
        if (directed <= 4096) {
            for (unsigned long k = 2; k <= directed.get_ui(); ++k) {
                windows.emplace_back(k);
            }
        } else {
            for (Integer k = 2; k < directed; k *= 2) {
                windows.push_back(k);
            }
            windows.push_back(directed);
        }
        w["windows_checked"] = windows.size();
        w["starving"] = direction_set(f, expected);
        for (const auto& k : windows) {
            const auto s = starving_directions(c.state, k);
            if (s != expected) {
                w["window"] = k.get_str();
                w["starving"] = direction_set(f, s);
                return outcome("switching-witness", Verdict::Fail, "starving set differs from the idle direction", w);
            }
        }
        return outcome("switching-witness", Verdict::Pass,
                       "starving set is {" + f.names[*c.cfg.scenario.idle_direction] + "} at every window", w);
    }
    const Integer window = std::min(Integer(static_cast<unsigned long>(c.cfg.options.window)), directed);
    if (window < 1) {
        return outcome("switching-witness", Verdict::NotApplicable, "no directed steps", w);
    }
    const auto starving = starving_directions(c.state, window);
    w["window"] = window.get_str();
    w["starving"] = direction_set(f, starving);
    if (starving.empty()) {
        return outcome("switching-witness", Verdict::Pass, "every direction occurs in the window", w);
    }
    if (c.state.has_rescale() || !only_argmin(c.cfg.scenario)) {
        return outcome("switching-witness", Verdict::NotApplicable,
                       "some direction starves; no certificate for scripted runs", w);
    }
    // Permanent starvation: with A the other directions (|A| >= 2), the
    // argmin run restricted to A keeps E + sum_A/(|A|-1) constant, so a
    // starving w with v(w) > sum_A/(|A|-1) stays above min_A forever.
    const auto& frame = c.state.frame();
    const std::size_t k = frame.dimension() - starving.size();
    if (k < 2) {
        return outcome("switching-witness", Verdict::NotApplicable, "fewer than two active directions", w);
    }
    ValueVector active(frame.basis());
    for (Direction i = 0; i < frame.dimension(); ++i) {
        if (!starving.count(i)) {
            active += frame.values[i];
        }
    }
    const ValueVector cap = active / Rational(static_cast<unsigned long>(k - 1));
    for (const auto wdir : starving) {
        if (!value_less(cap, frame.values[wdir])) {
            return outcome("switching-witness", Verdict::NotApplicable,
                           "some direction starves but permanence is not certified", w);
        }
    }
    const ValueVector limit = c.state.partial_sum() + cap;
    w["permanent"] = true;
    w["sum_at_most"] = interval_to_json(limit, c.cfg.interval_width);
    w["bound"] = interval_to_json(c.state.initial_frame().sum() / Rational(static_cast<unsigned long>(frame.dimension() - 1)),
                                  c.cfg.interval_width);
    return outcome("switching-witness", Verdict::Pass,
                   "starving set is certified permanent: the run does not switch and the sum stays below the bound",
                   w);
}

CheckOutcome check_order_drop(const Context& c)
{
    std::vector<Direction> word;
    try {
        word = monomial_word(c.state, c.cfg.options.word_limit);
    } catch (const IndexOutOfRange&) {
        return outcome("thm33a", Verdict::NotApplicable, "monomial word longer than the word limit");
    }
    if (word.empty()) {
        return outcome("thm33a", Verdict::NotApplicable, "no monomial steps");
    }
    const std::size_t d = c.state.dimension();
    // Shortest covering prefix, or a bounded prefix when some direction
    // never occurs.
    std::vector<bool> seen(d, false);
    std::size_t covered = 0;
    std::size_t len = 0;
    while (len < word.size() && covered < d) {
        if (!seen[word[len]]) {
            seen[word[len]] = true;
            ++covered;
        }
        ++len;
    }
    if (covered < d) {
        len = std::min<std::size_t>(word.size(), 64);
    }
    const std::span<const Direction> prefix(word.data(), len);
    const auto r = check_theorem_33a(d, prefix);
    Json w;
    w["prefix_length"] = len;
    w["full_coverage"] = r.full_coverage;
    if (r.full_coverage) {
        w["forms_checked"] = r.forms_checked;
        w["non_dropping"] = r.non_dropping.size();
    } else {
        Json missing = Json::array();
        for (auto m : r.missing) {
            missing.push_back(c.state.initial_frame().names[m]);
        }
        w["missing"] = missing;
        Json trace = Json::array();
        for (auto e : r.witness_trace) {
            trace.push_back(e);
        }
        w["witness_trace"] = trace;
    }
    return outcome("thm33a", r.pass ? Verdict::Pass : Verdict::Fail,
                   r.full_coverage ? "every sampled form drops in order along the covering prefix"
                                   : "the single-variable witness keeps order 1",
                   w);
}

CheckOutcome check_first_use(const Context& c)
{
    if (c.state.has_rescale()) {
        return outcome("prop344", Verdict::NotApplicable, "the run contains rescale steps");
    }
    FirstUseReport r;
    try {
        r = check_prop_344(c.state);
    } catch (const IncompleteCoverage&) {
        return outcome("prop344", Verdict::NotApplicable, "some direction never occurs");
    }
    Json w;
    Json order = Json::array();
    for (auto d : r.first_use_order) {
        order.push_back(c.state.initial_frame().names[d]);
    }
    w["first_use_order"] = order;
    w["increasing"] = r.increasing;
    w["bracketed"] = r.bracketed;
    w["s"] = r.s ? Json(r.s->get_str()) : Json(nullptr);
    w["partial_sums"] = r.partial_sums;
    if (r.partial_sums_violation) {
        w["partial_sums_violation"] = *r.partial_sums_violation;
    }
    return outcome("prop344", r.pass() ? Verdict::Pass : Verdict::Fail,
                   r.pass() ? "all three inequalities hold under first-use relabeling" : "an inequality fails", w);
}

CheckOutcome check_ratio(const Context& c)
{
    const auto& frame = c.state.initial_frame();
    const std::size_t d = frame.dimension();
    if (!only_argmin(c.cfg.scenario)) {
        return outcome("ratio-limit", Verdict::NotApplicable, "needs an argmin-driven run");
    }
    const Monomial f = c.cfg.options.ratio_f.value_or(Monomial::variable(d, 1));
    const Monomial g = c.cfg.options.ratio_g.value_or(Monomial::variable(d, 0));
    if (f.dimension() != d || g.dimension() != d) {
        throw ConfigError("ratio monomials must have dimension " + std::to_string(d));
    }
    RatioLimitReport r = [&] {
        try {
            return ratio_limit_report(MonomialForm({f}), MonomialForm({g}), init(frame),
                                      c.cfg.options.ratio_steps, c.cfg.options.ratio_eps);
        } catch (const AmbiguousDirection&) {
            return RatioLimitReport{frame.values[0], frame.values[0], {}, std::nullopt, false, false};
        }
    }();
    if (r.rows.empty()) {
        return outcome("ratio-limit", Verdict::NotApplicable, "argmin tie before any step");
    }
    Json w;
    w["f"] = format_monomial(f, frame.names);
    w["g"] = format_monomial(g, frame.names);
    w["v_f"] = exact_json(r.value_f);
    w["v_g"] = exact_json(r.value_g);
    w["eps"] = rational_to_json(c.cfg.options.ratio_eps);
    w["n0"] = r.n0 ? Json(r.n0->get_str()) : Json(nullptr);
    w["bracketing_ok"] = r.bracketing_ok;
    w["bracketing_used"] = r.bracketing_used;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back(Json{{"n", row.n.get_str()},
                            {"ord_f", row.ord_f.get_str()},
                            {"ord_g", row.ord_g.get_str()},
                            {"ratio", rational_to_json(row.ratio)}});
    }
    w["rows"] = rows;
    const bool ok = r.n0.has_value() && r.bracketing_ok;
    return outcome("ratio-limit", ok ? Verdict::Pass : Verdict::Fail,
                   ok ? "order ratio settles within eps of v(f)/v(g)" : "ratio does not settle or bracketing fails", w);
}

std::vector<Monomial> monomials_of_degree_at_most(std::size_t d, Exponent k)
{
    std::vector<Monomial> out;
    std::vector<Exponent> e(d, 0);
    std::function<void(std::size_t, Exponent)> rec = [&](std::size_t i, Exponent left) {
        if (i + 1 == d) {
            for (Exponent x = 0; x <= left; ++x) {
                e[i] = x;
                out.emplace_back(e);
            }
            return;
        }
        for (Exponent x = 0; x <= left; ++x) {
            e[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, k);
    return out;
}

CheckOutcome check_videal_chain(const Context& c)
{
    const auto& frame = c.state.initial_frame();
    const std::size_t K = c.cfg.options.chain_length;
    Json w;
    w["requested"] = K;
    // Extend the chain until it reaches the largest monomial value tested.
    const auto monos = monomials_of_degree_at_most(frame.dimension(), c.cfg.options.contraction_degree);
    ValueVector top = monomial_value(monos.front(), frame);
    for (const auto& m : monos) {
        const ValueVector v = monomial_value(m, frame);
        if (value_less(top, v)) {
            top = v;
        }
    }
    std::size_t size = std::max<std::size_t>(K, 2);
    VIdealChain chain;
    for (;;) {
        chain = videal_chain(frame, size);
        if (!value_less(chain.thresholds.back(), top)) {
            break;
        }
        size *= 2;
    }
    w["chain_length"] = chain.ideals.size();
    Json colengths = Json::array();
    for (std::size_t n = 0; n < std::min(K, chain.colengths.size()); ++n) {
        colengths.push_back(chain.colengths[n]);
    }
    w["colengths"] = colengths;
    Json head = Json::array();
    for (std::size_t n = 0; n < std::min<std::size_t>(8, chain.ideals.size()); ++n) {
        head.push_back(format_ideal(chain.ideals[n], frame.names));
    }
    w["first_ideals"] = head;

    // pV ∩ R for a monomial p is the v-ideal at v(p).
    std::size_t contractions = 0;
    for (const auto& m : monos) {
        const ValueVector v = monomial_value(m, frame);
        const auto it = std::lower_bound(chain.thresholds.begin(), chain.thresholds.end(), v,
                                         [](const ValueVector& a, const ValueVector& b) { return value_less(a, b); });
        const bool member = it != chain.thresholds.end() && *it == v
                            && videal_at(frame, v, false) == chain.ideals[static_cast<std::size_t>(it - chain.thresholds.begin())];
        if (!member) {
            w["contraction_failure"] = monomial_to_json(m);
            return outcome("videal-chain", Verdict::Fail, "a monomial contraction is not a chain member", w);
        }
        ++contractions;
    }
    w["contractions_checked"] = contractions;
    if (!certified_independent(frame)) {
        return outcome("videal-chain", Verdict::NotApplicable,
                       "chain descends; values not certified independent, colength one is not claimed", w);
    }
    for (std::size_t n = 0; n < std::min(K, chain.colengths.size()); ++n) {
        if (chain.colengths[n] != 1) {
            w["colength_failure"] = n;
            return outcome("videal-chain", Verdict::Fail, "colength above one", w);
        }
    }
    return outcome("videal-chain", Verdict::Pass, "strictly descending, colength one, contractions are members", w);
}

CheckOutcome check_tau(const Context& c)
{
    if (c.state.has_rescale()) {
        return outcome("tau-bound", Verdict::NotApplicable, "the run contains rescale steps");
    }
    std::vector<Direction> word;
    try {
        word = monomial_word(c.state, c.cfg.options.word_limit);
    } catch (const IndexOutOfRange&) {
        return outcome("tau-bound", Verdict::NotApplicable, "monomial word longer than the word limit");
    }
    const auto chain = videal_chain(c.state.initial_frame(), c.cfg.options.tau_chain);
    const auto tau = tau_bound(chain, word);
    const auto scan = tau_bound_scan(chain, word);
    Json w;
    Json values = Json::array();
    for (const auto& t : tau) {
        values.push_back(t ? Json(*t) : Json(nullptr));
    }
    w["tau"] = values;
    if (tau != scan) {
        return outcome("tau-bound", Verdict::Fail, "direct scan disagrees", w);
    }
    const std::span<const Direction> dirs(word);
    for (std::size_t n = 1; n < tau.size(); ++n) {
        if (!tau[n]) {
            w["undefined_at"] = n;
            return outcome("tau-bound", Verdict::Fail, "word ends before all ideals become principal", w);
        }
        const std::size_t j = *tau[n];
        for (std::size_t mu = 0; mu < n; ++mu) {
            if (!extend_ideal(chain.ideals[mu], dirs.first(j)).is_principal()) {
                w["not_principal"] = Json{{"n", n}, {"mu", mu}};
                return outcome("tau-bound", Verdict::Fail, "an ideal is not principal at the reported j", w);
            }
        }
        if (j > 0) {
            bool some = false;
            for (std::size_t mu = 0; mu < n && !some; ++mu) {
                some = !extend_ideal(chain.ideals[mu], dirs.first(j - 1)).is_principal();
            }
            if (!some) {
                w["not_minimal"] = n;
                return outcome("tau-bound", Verdict::Fail, "the reported j is not minimal", w);
            }
        }
    }
    return outcome("tau-bound", Verdict::Pass, "principal at the reported j, not at j-1", w);
}

CheckOutcome check_low_ideals(const Context& c)
{
    const auto& frame = c.state.initial_frame();
    LowIdealsReport r;
    try {
        r = check_remark_4175(frame);
    } catch (const PreconditionViolation& e) {
        return outcome("remark4175", Verdict::NotApplicable, e.what());
    }
    if (!r.hypothesis) {
        return outcome("remark4175", Verdict::NotApplicable, "largest value is not below twice the smallest");
    }
    Json w;
    Json actual = Json::array();
    for (const auto& i : r.actual) {
        actual.push_back(format_ideal(i, frame.names));
    }
    w["chain"] = actual;
    Json expected = Json::array();
    for (const auto& i : r.expected) {
        expected.push_back(format_ideal(i, frame.names));
    }
    w["expected"] = expected;
    return outcome("remark4175", r.pass ? Verdict::Pass : Verdict::Fail,
                   r.pass ? "chain starts R, (x_i..x_d)+m^2, m^2" : "chain differs from the predicted head", w);
}

CheckOutcome check_series(const Context& c)
{
    const Scenario& s = c.cfg.scenario;
    if (s.checkpoints.empty() && s.groups.empty()) {
        return outcome("series-sum", Verdict::NotApplicable, "scenario has no expected partial sums");
    }
    const BasisPtr& basis = c.state.frame().basis();
    auto sum_at = [&](std::size_t plan_index) -> const std::optional<ValueVector>& {
        return c.col.plan_sums.at(plan_index);
    };
    Json w;
    w["checkpoints"] = s.checkpoints.size();
    for (const auto& cp : s.checkpoints) {
        const auto& e = sum_at(cp.after);
        if (!e || !(*e == ValueVector::rational(basis, cp.partial_sum))) {
            w["checkpoint_failure"] = Json{{"after", cp.after},
                                           {"expected", rational_to_json(cp.partial_sum)},
                                           {"actual", e ? exact_json(*e) : Json(nullptr)}};
            return outcome("series-sum", Verdict::Fail, "partial sum differs from the closed form", w);
        }
        if (s.limit && !(cp.partial_sum < *s.limit)) {
            w["limit_failure"] = cp.after;
            return outcome("series-sum", Verdict::Fail, "partial sum reaches the limit", w);
        }
    }
    // Groups: the run's terms sum exactly to the group sum, and after k
    // groups the partial sum is at least k.
    std::size_t k = 0;
    for (const auto& g : s.groups) {
        const ValueVector before = g.plan_index == 0 ? ValueVector(basis) : *sum_at(g.plan_index - 1);
        const ValueVector after = *sum_at(g.plan_index);
        ++k;
        if (!(after - before == ValueVector::rational(basis, g.sum))) {
            w["group_failure"] = g.plan_index;
            return outcome("series-sum", Verdict::Fail, "a term group has the wrong sum", w);
        }
        if (value_less(after, ValueVector::rational(basis, Rational(static_cast<unsigned long>(k))))) {
            w["divergence_failure"] = k;
            return outcome("series-sum", Verdict::Fail, "partial sum after k groups is below k", w);
        }
    }
    w["groups"] = k;
    const ValueVector& e = c.state.partial_sum();
    w["final_partial_sum"] = exact_json(e);
    w["limit"] = s.limit ? rational_to_json(*s.limit) : Json(nullptr);
    if (s.limit) {
        if (const auto q = as_rational(e)) {
            w["gap_to_limit"] = rational_to_json(*s.limit - *q);
        }
    }
    return outcome("series-sum", Verdict::Pass,
                   s.limit ? "partial sums match the closed form below the limit " + format_rational(*s.limit)
                           : "every group sums to its value and k groups give at least k",
                   w);
}

CheckOutcome check_change_of_direction(const Context& c)
{
    // Longest monomial prefix, capped.
    Integer prefix = 0;
    for (const auto& r : c.state.history()) {
        if (r.kind != StepKind::Monomial) {
            break;
        }
        prefix += r.repeat;
    }
    const Integer cap(static_cast<unsigned long>(c.cfg.options.prefix_limit));
    if (prefix > cap) {
        prefix = cap;
    }
    Json w;
    w["prefixes_checked"] = prefix.get_str();
    if (prefix == 0) {
        return outcome("change-of-direction", Verdict::NotApplicable, "no monomial prefix", w);
    }
    std::optional<Integer> first_change;
    for (Integer n = 1; n <= prefix; ++n) {
        const bool a = change_of_direction(c.state, n);
        const bool b = maximal_ideal_in_square(c.state, n);
        if (a != b) {
            w["disagreement_at"] = n.get_str();
            return outcome("change-of-direction", Verdict::Fail, "predicates disagree", w);
        }
        if (a && !first_change) {
            first_change = n;
        }
    }
    w["first_change"] = first_change ? Json(first_change->get_str()) : Json(nullptr);
    return outcome("change-of-direction", Verdict::Pass,
                   "value comparison and square containment agree on every prefix", w);
}

struct CheckEntry {
    std::string name;
    std::function<CheckOutcome(const Context&)> fn;
    std::string doc;
};

const std::vector<CheckEntry>& registry()
{
    static const std::vector<CheckEntry> r{
        {"eq631", check_conservation,
         "Conservation identity from the proof of the finiteness bound: inside every monomial segment, "
         "the partial sum of step values plus (sum of the current frame)/(d-1) equals (sum of the "
         "segment's starting frame)/(d-1). Checked by exact equality after every step."},
        {"bound63", check_bound,
         "Finiteness bound for the sum of step values: on a run without rescales, every partial sum "
         "E_n is at most (sum of initial values)/(d-1). Also reports the first step at which every "
         "frame value is certified below 10^-6, which places E_N within d*10^-6/(d-1) of the bound, "
         "the equality case for rationally independent values."},
        {"switching-witness", check_switching,
         "Witness for or against strong switching. Reports the directions absent from the last W "
         "directed steps. An empty set is evidence of switching. A non-empty set on an argmin run is "
         "certified permanent when each starving value exceeds (sum of the active values)/(k-1), k >= 2 "
         "active directions: the active directions then evolve on their own and never drop below it, "
         "so the run does not switch and the sum stays strictly below the bound. For embedded examples "
         "with an idle coordinate the starving set must be exactly that coordinate at every window of "
         "length at least two, which witnesses that the union of the rings is not the valuation ring."},
        {"thm33a", check_order_drop,
         "Order-drop criterion for monomial words: when every direction occurs, each nonunit form "
         "with monomial support drops strictly in order along the word; when a direction w is "
         "missing, the form w keeps order one. Exhaustive over small supports for d <= 3, sampled "
         "otherwise, on the shortest covering prefix of the run."},
        {"prop344", check_first_use,
         "Inequalities on the initial values for a run that uses every direction: relabel by first "
         "use, then a_1 < ... < a_d, s*a_1 < a_2 < (s+1)*a_1 for some s, and (j-2)*a_j is below "
         "a_1 + ... + a_{j-1} for every j."},
        {"ratio-limit", check_ratio,
         "Order ratio approximation: along an argmin run the ratio ord(f)/ord(g) in R_n tends to "
         "v(f)/v(g); reports the first n after which it stays within eps and checks the bracketing "
         "p/q <= ratio < (p+1)/q whenever both quotient monomials lie in R_n."},
        {"videal-chain", check_videal_chain,
         "Chain of v-ideals of the initial frame: strictly descending, each step of colength one "
         "when the values are independent, and the contraction pV ∩ R of every monomial p of small "
         "degree is a member of the chain."},
        {"tau-bound", check_tau,
         "For each n, the least j such that the extensions I_mu R_j are principal for every mu < n, "
         "along the run's word; verified by a direct scan and by checking principality at j and its "
         "failure at j-1."},
        {"remark4175", check_low_ideals,
         "When the largest value is below twice the smallest, the chain of v-ideals starts R, then "
         "(x_i, ..., x_d) + m^2 for the variables by increasing value, then m^2, each step of "
         "colength one."},
        {"series-sum", check_series,
         "Closed forms for the worked examples: partial sums at episode boundaries equal the exact "
         "rational predicted by the term law and stay below the limit; for divergent examples every "
         "term group sums to exactly 1 and k groups give a partial sum of at least k."},
        {"change-of-direction", check_change_of_direction,
         "A change of direction by step n (the first step value exceeds the value at step n-1) "
         "happens exactly when m_0 R_n lies in the square of the maximal ideal of R_n, decided from "
         "exponents; compared on every monomial prefix of the run."},
    };
    return r;
}

const CheckEntry& find_check(const std::string& name)
{
    for (const auto& e : registry()) {
        if (e.name == name) {
            return e;
        }
    }
    throw UnknownCheck("'" + name + "'");
}

Json trace_row(const ParameterFrame& f, const StepRecord& r, const ValueVector& e, const Rational& width)
{
    Json row;
    row["step"] = r.first_step.get_str();
    row["repeat"] = r.repeat.get_str();
    row["kind"] = r.kind == StepKind::Monomial ? "monomial" : "rescale";
    row["dir"] = r.dir ? Json(f.names[*r.dir]) : Json(nullptr);
    row["m"] = exact_json(r.m_value);
    row["E"] = interval_to_json(e, width);
    return row;
}

void csv_row(std::ostream& out, const ParameterFrame& f, const StepRecord& r, const ValueVector& e,
             const Rational& width)
{
    const auto m = value_to_interval(r.m_value, width);
    const auto iv = value_to_interval(e, width);
    out << r.first_step.get_str() << ',' << (r.kind == StepKind::Monomial ? "monomial" : "rescale") << ','
        << direction_name(f, r.dir) << ',' << format_rational(m.lo) << ',' << format_rational(m.hi) << ','
        << format_rational(iv.lo) << ',' << format_rational(iv.hi) << '\n';
}

} // namespace

std::vector<std::string> check_names()
{
    std::vector<std::string> out;
    for (const auto& e : registry()) {
        out.push_back(e.name);
    }
    return out;
}

std::string explain(const std::string& check)
{
    return find_check(check).doc;
}

RunReport run(const RunConfig& cfg, std::ostream* csv)
{
    using Clock = std::chrono::steady_clock;
    for (const auto& name : cfg.checks) {
        find_check(name);
    }
    const Scenario& s = cfg.scenario;
    const auto wants = [&](const char* name) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
    };

    Collected col;
    col.track_conservation = wants("eq631");
    col.track_bound = wants("bound63");
    col.plan_sums.resize(s.plan.size());
    const std::size_t d = s.frame.dimension();
    col.bound = s.frame.sum() / Rational(static_cast<unsigned long>(d - 1));
    const Rational small(1, 1000000);

    RunReport report;
    Json& doc = report.document;
    doc["scenario"] = scenario_to_json(s);
    Json rows = Json::array();
    bool truncated = false;
    std::size_t seen_records = 0;
    if (csv) {
        *csv << kCsvHeader << '\n';
    }

    const auto t0 = Clock::now();
    std::optional<SequenceState> final_state;
    Integer at = 0;
    try {
        final_state = replay(s, [&](const SequenceState& st, std::size_t plan_index) {
            at = st.step();
            col.plan_sums[plan_index] = st.partial_sum();
            // Records appended by this transform (one, or a rescale plus run).
            const auto& h = st.history();
            for (; seen_records < h.size(); ++seen_records) {
                const StepRecord& r = h[seen_records];
                if (csv) {
                    csv_row(*csv, st.initial_frame(), r, st.partial_sum(), cfg.interval_width);
                }
                if (rows.size() < cfg.trace_limit) {
                    rows.push_back(trace_row(st.initial_frame(), r, st.partial_sum(), cfg.interval_width));
                } else {
                    truncated = true;
                }
            }
            if (col.track_conservation && !col.first_conservation_failure && !invariant_631_check(st)) {
                col.first_conservation_failure = st.step();
            }
            if (col.track_bound && !st.has_rescale()) {
                if (!col.first_bound_failure && value_less(*col.bound, st.partial_sum())) {
                    col.first_bound_failure = st.step();
                }
                if (!col.small_at && below(frame_max(st.frame()), small)) {
                    col.small_at = st.step();
                }
            }
        });
    } catch (const Error& e) {
        throw Error("at step " + at.get_str() + ": " + e.what());
    }
    const SequenceState& state = *final_state;
    const auto t1 = Clock::now();

    Json result;
    result["steps"] = state.step().get_str();
    result["records"] = state.history().size();
    result["partial_sum"] = exact_json(state.partial_sum());
    result["partial_sum_interval"] = interval_to_json(state.partial_sum(), cfg.interval_width);
    Json counts = Json::object();
    const auto dc = direction_counts(state);
    for (std::size_t i = 0; i < d; ++i) {
        counts[s.frame.names[i]] = dc[i].get_str();
    }
    result["direction_counts"] = counts;
    Json frame = Json::array();
    for (const auto& v : state.frame().values) {
        frame.push_back(interval_to_json(v, cfg.interval_width));
    }
    result["final_frame_intervals"] = frame;
    doc["result"] = result;

    Json checks = Json::array();
    Json timings;
    timings["replay_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const Context ctx{cfg, state, col};
    for (const auto& name : cfg.checks) {
        const auto c0 = Clock::now();
        CheckOutcome o = find_check(name).fn(ctx);
        timings[name + "_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - c0).count();
        checks.push_back(Json{{"name", o.name},
                              {"verdict", verdict_name(o.verdict)},
                              {"summary", o.summary},
                              {"witness", o.witness}});
        report.outcomes.push_back(std::move(o));
    }
    doc["checks"] = checks;
    doc["all_pass"] = report.all_pass();
    doc["trace"] = Json{{"interval_width", rational_to_json(cfg.interval_width)},
                        {"truncated", truncated},
                        {"rows", rows}};
    if (cfg.timings) {
        doc["timings"] = timings;
    }
    return report;
}

} // namespace lqt
