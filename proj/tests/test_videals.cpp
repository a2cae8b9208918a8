#include "support.hpp"

#include "lqt/forms.hpp"
#include "lqt/gallery.hpp"
#include "lqt/videals.hpp"

#include <doctest.h>

using namespace lqt;
using lqt::test::basis;
using lqt::test::one_sqrt2;
using lqt::test::rational_frame;
using lqt::test::val;

namespace {

MonomialIdeal ideal(std::vector<Monomial> gens) { return minimalize(std::move(gens)); }

std::vector<ValueVector> ladder_values(const ValueLadder& l)
{
    std::vector<ValueVector> out;
    for (const auto& e : l.entries) {
        out.push_back(e.value);
    }
    return out;
}

ValueVector q(const std::string& r) { return ValueVector::rational(basis(2), parse_rational(r)); }

} // namespace

TEST_CASE("value ladders")
{
    CHECK(ladder_values(enumerate_values(one_sqrt2(), q("2")))
          == std::vector<ValueVector>{q("0"), q("1"), val({"0", "1"}), q("2")});
    CHECK(ladder_values(enumerate_values(one_sqrt2(), q("1/2"))) == std::vector<ValueVector>{q("0")});
    CHECK(ladder_values(enumerate_values(rational_frame({"1", "3/2"}), q("3")))
          == std::vector<ValueVector>{q("0"), q("1"), q("3/2"), q("2"), q("5/2"), q("3")});
    const ValueLadder first = enumerate_first_values(one_sqrt2(), 6);
    CHECK(first.entries.size() >= 6);
    for (std::size_t i = 1; i < first.entries.size(); ++i) {
        CHECK(value_less(first.entries[i - 1].value, first.entries[i].value));
    }
}

TEST_CASE("ideals of values above a threshold")
{
    const ParameterFrame f = one_sqrt2();
    CHECK(videal_at(f, val({"0", "1"}), false) == ideal({{2, 0}, {0, 1}}));
    CHECK(videal_at(f, q("0"), false).is_unit());
    CHECK(videal_at(f, q("2"), false) == MonomialIdeal::maximal_power(2, 2));
    CHECK(videal_at(f, q("1"), true) == ideal({{2, 0}, {0, 1}}));
}

TEST_CASE("chains of v-ideals")
{
    const VIdealChain c = videal_chain(one_sqrt2(), 4);
    REQUIRE(c.ideals.size() == 4);
    CHECK(c.ideals[0].is_unit());
    CHECK(c.ideals[1] == MonomialIdeal::maximal_power(2, 1));
    CHECK(c.ideals[2] == ideal({{2, 0}, {0, 1}}));
    CHECK(c.ideals[3] == MonomialIdeal::maximal_power(2, 2));

    const VIdealChain one = videal_chain(one_sqrt2(), 1);
    REQUIRE(one.ideals.size() == 1);
    CHECK(one.ideals[0].is_unit());

    const VIdealChain r = videal_chain(rational_frame({"1", "3/2"}), 3);
    REQUIRE(r.ideals.size() == 3);
    CHECK(r.ideals[2] == ideal({{2, 0}, {0, 1}}));
}

TEST_CASE("chain members are successive strict v-ideals")
{
    const ParameterFrame f = random_unit_frame(3, 5);
    const VIdealChain c = videal_chain(f, 30);
    for (std::size_t n = 0; n + 1 < c.ideals.size(); ++n) {
        CHECK(c.ideals[n + 1] == videal_at(f, c.thresholds[n], true));
        CHECK(c.ideals[n] != c.ideals[n + 1]);
        for (const auto& g : c.ideals[n + 1].generators()) {
            CHECK(c.ideals[n].contains(g));
        }
    }
}

TEST_CASE("colengths")
{
    const ParameterFrame f = one_sqrt2();
    const VIdealChain c = videal_chain(f, 10);
    CHECK(colength_step(f, c, 0) == 1);
    CHECK(colength_step(f, c, 1) == 1);
    for (std::size_t n = 0; n + 1 < c.ideals.size(); ++n) {
        CHECK(colength_step(f, c, n) == 1);
    }
    const ParameterFrame dep = rational_frame({"1", "2"});
    const VIdealChain d = videal_chain(dep, 4);
    CHECK(d.thresholds[2] == q("2"));
    CHECK(colength_step(dep, d, 2) == 2);
}

TEST_CASE("every monomial contraction is in the chain")
{
    const ParameterFrame f = one_sqrt2();
    const VIdealChain c = videal_chain(f, 40);
    for (Exponent a = 0; a <= 4; ++a) {
        for (Exponent b = 0; a + b <= 4; ++b) {
            const MonomialIdeal j = videal_at(f, monomial_value(Monomial{a, b}, f), false);
            CHECK(std::find(c.ideals.begin(), c.ideals.end(), j) != c.ideals.end());
        }
    }
}

TEST_CASE("principality bound")
{
    const VIdealChain c = videal_chain(one_sqrt2(), 4);
    SequenceState s = init(one_sqrt2());
    for (int i = 0; i < 12; ++i) {
        s = step_argmin(std::move(s)).first;
    }
    const auto word = monomial_word(s);
    const auto tau = tau_bound(c, word);
    REQUIRE(tau.size() == 5);
    CHECK(tau[0] == std::size_t(0));
    CHECK(tau[1] == std::size_t(0));
    CHECK(tau[2] == std::size_t(1));
    CHECK(tau[3] == std::size_t(2));
    CHECK(tau == tau_bound_scan(c, word));
    for (std::size_t n = 1; n < tau.size(); ++n) {
        CHECK(*tau[n - 1] <= *tau[n]);
    }
    const std::vector<Direction> none;
    const auto short_tau = tau_bound(c, none);
    CHECK_FALSE(short_tau[2].has_value());
}

TEST_CASE("the first ideals below the maximal ideal")
{
    const LowIdealsReport a = check_remark_4175(one_sqrt2());
    CHECK(a.hypothesis);
    CHECK(a.pass);
    const LowIdealsReport b = check_remark_4175(rational_frame({"1", "3"}));
    CHECK_FALSE(b.hypothesis);
    CHECK_FALSE(b.pass);
    const LowIdealsReport c = check_remark_4175(rational_frame({"1", "3/2", "7/4"}));
    CHECK(c.hypothesis);
    CHECK(c.pass);
    CHECK(c.actual == c.expected);
}
