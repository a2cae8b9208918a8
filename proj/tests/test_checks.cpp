#include "support.hpp"

#include "lqt/checks.hpp"
#include "lqt/error.hpp"

#include <doctest.h>

#include <sstream>

using namespace lqt;

namespace {

const CheckOutcome& outcome(const RunReport& r, const std::string& name)
{
    for (const auto& o : r.outcomes) {
        if (o.name == name) {
            return o;
        }
    }
    FAIL("missing outcome " << name);
    throw;
}

RunReport run_json(const std::string& text, std::ostream* csv = nullptr)
{
    return run(config_from_json(Json::parse(text)), csv);
}

} // namespace

TEST_CASE("series sum on the Shannon-type preset")
{
    const RunReport r = run_json(R"({"preset": "shannon-4.18", "checks": ["series-sum"]})");
    const CheckOutcome& o = outcome(r, "series-sum");
    CHECK(o.verdict == Verdict::Pass);
    CHECK(r.document["scenario"]["limit"] == "8/3");
    CHECK(r.all_pass());
}

TEST_CASE("switching witness on the embedded alternating preset")
{
    const RunReport r = run_json(R"({"preset": "rr1", "checks": ["switching-witness"]})");
    const CheckOutcome& o = outcome(r, "switching-witness");
    CHECK(o.verdict == Verdict::Pass);
    CHECK(o.witness["starving"] == Json::array({"z"}));
}

TEST_CASE("an argmin run on (1, sqrt2) passes its checks")
{
    const RunReport r = run_json(R"({
        "basis": ["one", {"sqrt": 2}],
        "frame": [["1", "0"], ["0", "1"]],
        "mode": "argmin", "steps": 300,
        "checks": ["eq631", "bound63", "switching-witness", "thm33a", "prop344",
                   "ratio-limit", "videal-chain", "tau-bound", "remark4175", "change-of-direction"]
    })");
    for (const auto& o : r.outcomes) {
        CAPTURE(o.name);
        CAPTURE(o.summary);
        CHECK(o.verdict == Verdict::Pass);
    }
    CHECK(r.all_pass());
}

TEST_CASE("rescaled runs make the bound check not applicable")
{
    const RunReport r = run_json(R"({"preset": "dvr", "steps": 100, "checks": ["bound63", "eq631"]})");
    CHECK(outcome(r, "bound63").verdict == Verdict::NotApplicable);
    CHECK(outcome(r, "eq631").verdict == Verdict::Pass);
    CHECK_FALSE(r.all_pass());
}

TEST_CASE("no checks gives a trace-only report")
{
    std::ostringstream csv;
    const RunReport r = run_json(R"({"preset": "rr1-2d", "steps": 6})", &csv);
    CHECK(r.outcomes.empty());
    CHECK(r.document["checks"].empty());
    CHECK(r.document["trace"]["rows"].size() == 6);
    CHECK(r.document["trace"]["truncated"] == false);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == kCsvHeader);
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
    }
    CHECK(rows == 6);
}

TEST_CASE("reports are deterministic")
{
    const std::string cfg = R"({"preset": "random", "steps": 300, "seed": 5, "checks": ["eq631", "bound63"]})";
    CHECK(run_json(cfg).document.dump() == run_json(cfg).document.dump());
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"preset": "shannon-4.18", "checks": ["nope"]})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"preset": "nope"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"frame": [["1"]]})")), Error);
}

TEST_CASE("check registry")
{
    const auto names = check_names();
    CHECK(names.size() == 11);
    for (const auto& n : names) {
        CHECK_FALSE(explain(n).empty());
    }
    CHECK_FALSE(explain("eq631").empty());
    CHECK_THROWS_AS(explain("nope"), UnknownCheck);
}

TEST_CASE("scenario JSON round trip")
{
    for (const auto& name : list_presets()) {
        CAPTURE(name);
        const Scenario s = preset(name, 5);
        const Json j = scenario_to_json(s);
        const Scenario back = scenario_from_json(j);
        CHECK(scenario_to_json(back).dump() == j.dump());
        CHECK(replay(back).partial_sum() == replay(s).partial_sum());
    }
}

TEST_CASE("value and rational JSON")
{
    CHECK(rational_from_json(Json("3/6")) == Rational(1, 2));
    CHECK(rational_from_json(Json(4)) == Rational(4));
    CHECK(rational_to_json(Rational(-1, 3)) == "-1/3");
    const BasisPtr b = basis_from_json(Json::parse(R"(["one", {"sqrt": 2}])"));
    CHECK(b->same_as(*RealBasis::default_basis(2)));
    const ValueVector v = value_from_json(b, Json::parse(R"(["1/2", "-3"])"));
    CHECK(value_from_json(b, value_to_json(v)) == v);
    CHECK(value_from_json(b, Json("5/2")) == ValueVector::rational(b, Rational(5, 2)));
    CHECK(monomial_from_json(monomial_to_json(Monomial{3, 0, 2})) == Monomial{3, 0, 2});
}
