#include "support.hpp"

#include "lqt/error.hpp"
#include "lqt/forms.hpp"

#include <doctest.h>

using namespace lqt;
using lqt::test::one_sqrt2;
using lqt::test::val;

namespace {

MonomialForm form(std::vector<Monomial> s) { return MonomialForm(std::move(s)); }

} // namespace

TEST_CASE("order of a form")
{
    CHECK(form_order(form({{2, 0}, {0, 1}})) == 1);
    CHECK(form_order(form({{1, 1}})) == 2);
    CHECK(form_order(form({{0, 0}, {3, 3}})) == 0);
}

TEST_CASE("transform of a form")
{
    CHECK(transform_form(form({{1, 0}, {0, 1}}), 0) == form({{0, 0}, {0, 1}}));
    CHECK(transform_form(form({{2, 0}, {0, 2}}), 0) == form({{0, 0}, {0, 2}}));
    CHECK(transform_form(form({{0, 1}}), 0) == form({{0, 1}}));
}

TEST_CASE("order traces")
{
    const std::vector<Direction> xxx{0, 0, 0};
    const std::vector<Direction> xy{0, 1};
    const std::vector<Direction> x{0};
    CHECK(ord_trace(form({{0, 1}}), xxx) == std::vector<Exponent>{1, 1, 1, 1});
    CHECK(ord_trace(form({{0, 1}}), xy) == std::vector<Exponent>{1, 1, 0});
    CHECK(ord_trace(form({{1, 0}, {0, 1}}), x) == std::vector<Exponent>{1, 0});
}

TEST_CASE("order drop criterion")
{
    const std::vector<Direction> xy{0, 1};
    const std::vector<Direction> xxx{0, 0, 0};
    const OrderDropReport full = check_theorem_33a(2, xy);
    CHECK(full.full_coverage);
    CHECK(full.non_dropping.empty());
    CHECK(full.forms_checked > 0);
    CHECK(full.pass);

    const OrderDropReport partial = check_theorem_33a(2, xxx);
    CHECK_FALSE(partial.full_coverage);
    REQUIRE(partial.witness);
    CHECK(*partial.witness == form({{0, 1}}));
    CHECK(partial.witness_trace == std::vector<Exponent>{1, 1, 1, 1});
    CHECK(partial.pass);

    const OrderDropReport three = check_theorem_33a(3, xy);
    REQUIRE(three.witness);
    CHECK(*three.witness == form({{0, 0, 1}}));
    CHECK(three.pass);
}

TEST_CASE("small exhaustive sweep")
{
    const OrderDropSweep sweep = sweep_theorem_33a(2, 2, 4);
    CHECK(sweep.pass());
    CHECK(sweep.words > 0);
    CHECK(sweep.covering_pairs > 0);
}

TEST_CASE("value of a form")
{
    const ParameterFrame f = one_sqrt2();
    CHECK(value_of_form(form({{1, 0}, {0, 1}}), f) == val({"1", "0"}));
    CHECK(value_of_form(form({{1, 1}}), f) == val({"1", "1"}));
    CHECK(value_of_form(form({{2, 0}, {0, 1}}), f) == val({"0", "1"}));
    CHECK(monomial_value(Monomial{3, 2}, f) == val({"3", "2"}));
}

TEST_CASE("ratio of orders converges to the value ratio")
{
    const SequenceState s0 = init(one_sqrt2());
    const Rational eps(1, 100);
    const RatioLimitReport r = ratio_limit_report(form({{0, 1}}), form({{1, 0}}), s0, 60, eps);
    REQUIRE(r.n0);
    CHECK(*r.n0 <= 30);
    CHECK(r.bracketing_ok);
    const RatioRow& last = r.rows.back();
    CHECK((last.ratio - eps) * (last.ratio - eps) < 2);
    CHECK((last.ratio + eps) * (last.ratio + eps) > 2);

    const RatioLimitReport same = ratio_limit_report(form({{1, 1}}), form({{1, 1}}), s0, 20, eps);
    CHECK(same.rows.back().ratio == 1);

    const RatioLimitReport half = ratio_limit_report(form({{1, 0}}), form({{2, 0}}), s0, 20, eps);
    for (const auto& row : half.rows) {
        CHECK(row.ratio == Rational(1, 2));
    }
}

TEST_CASE("comparability index")
{
    const SequenceState s0 = init(one_sqrt2());
    const ComparabilityResult a = comparability_index(Monomial{0, 1}, Monomial{2, 0}, s0);
    CHECK(a.t == 2);
    CHECK(a.side == ComparabilitySide::QoverP);
    CHECK(a.consistent);

    const ComparabilityResult b = comparability_index(Monomial{1, 0}, Monomial{0, 1}, s0);
    CHECK(b.t == 1);
    CHECK(b.side == ComparabilitySide::QoverP);
    CHECK(b.consistent);

    CHECK_THROWS_AS(comparability_index(Monomial{1, 0}, Monomial{1, 0}, s0), PreconditionViolation);
}
