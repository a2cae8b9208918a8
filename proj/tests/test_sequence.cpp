#include "support.hpp"

#include "lqt/error.hpp"
#include "lqt/gallery.hpp"

#include <doctest.h>

#include <random>

using namespace lqt;
using lqt::test::basis;
using lqt::test::one_sqrt2;
using lqt::test::rational_frame;
using lqt::test::val;

namespace {

SequenceState argmin_run(ParameterFrame frame, std::size_t n)
{
    SequenceState s = init(std::move(frame));
    for (std::size_t i = 0; i < n; ++i) {
        s = step_argmin(std::move(s)).first;
    }
    return s;
}

ValueVector q(const std::string& r) { return ValueVector::rational(basis(2), parse_rational(r)); }

// Exact argmin without the enclosure cache.
Direction slow_argmin(const ParameterFrame& f)
{
    Direction best = 0;
    for (Direction i = 1; i < f.dimension(); ++i) {
        if (value_less(f.values[i], f.values[best])) {
            best = i;
        }
    }
    return best;
}

} // namespace

TEST_CASE("argmin steps on (1, sqrt2)")
{
    auto [s1, d1] = step_argmin(init(one_sqrt2()));
    CHECK(d1 == 0);
    CHECK(s1.frame().values[0] == val({"1", "0"}));
    CHECK(s1.frame().values[1] == val({"-1", "1"}));
    auto [s2, d2] = step_argmin(s1);
    CHECK(d2 == 1);
    CHECK(s2.frame().values[0] == val({"2", "-1"}));
    CHECK(s2.frame().values[1] == val({"-1", "1"}));
    CHECK(s2.partial_sum() == val({"0", "1"}));
}

TEST_CASE("step errors")
{
    CHECK_THROWS_AS(step_argmin(init(rational_frame({"1", "1"}))), AmbiguousDirection);
    CHECK_THROWS_AS(step_in_direction(init(one_sqrt2()), 1), DirectionNotMinimal);
    CHECK_THROWS_AS(step_in_direction(init(rational_frame({"1", "1"})), 1), NonPositiveValue);
    CHECK(step_in_direction(init(one_sqrt2()), 0).frame().values[1] == val({"-1", "1"}));
    CHECK_THROWS_AS(make_frame({q("1")}), Error);
    CHECK_THROWS_AS(make_frame({q("1"), q("0")}), NonPositiveValue);
}

TEST_CASE("rescale bookkeeping")
{
    SequenceState s = init(rational_frame({"1", "3/2", "7/4"}));
    for (int i = 0; i < 3; ++i) {
        s = step_argmin(std::move(s)).first;
    }
    CHECK(s.partial_sum() == q("7/4"));
    for (const auto& v : s.frame().values) {
        CHECK(v == q("1/4"));
    }
    s = rescale_step(std::move(s), {q("1/4"), q("3/8"), q("7/16")}, 0);
    CHECK(s.partial_sum() == q("2"));
    CHECK(invariant_631_check(s));

    CHECK_THROWS_AS(rescale_step(s, {q("1/4"), q("0"), q("1")}), NonPositiveValue);
    const SequenceState same = rescale_step(s, s.frame().values);
    CHECK(same.partial_sum() == q("9/4"));
    CHECK(same.frame().values == s.frame().values);
}

TEST_CASE("conservation identity")
{
    CHECK(invariant_631_check(init(one_sqrt2())));
    SequenceState s = init(one_sqrt2());
    s = step_argmin(std::move(s)).first;
    CHECK(s.partial_sum() == val({"1", "0"}));
    CHECK(invariant_631_check(s));
    const auto b = basis(4);
    SequenceState t = init(make_frame({val(b, {"0", "1"}), val(b, {"0", "0", "1"}), val(b, {"0", "0", "0", "1"})}));
    for (int i = 0; i < 3000; ++i) {
        t = step_argmin(std::move(t)).first;
        REQUIRE(invariant_631_check(t));
    }
}

TEST_CASE("partial sums stay below the bound")
{
    const auto b = basis(3);
    const ParameterFrame f = make_frame({val(b, {"0", "1"}), val(b, {"0", "0", "1"}), val(b, {"1"})});
    const ValueVector bound = f.sum() / Rational(2);
    SequenceState s = init(f);
    for (int i = 0; i < 2000; ++i) {
        s = step_argmin(std::move(s)).first;
        REQUIRE(value_less(s.partial_sum(), bound));
    }
}

TEST_CASE("m-values are nonincreasing")
{
    const SequenceState s = argmin_run(one_sqrt2(), 500);
    for (std::size_t i = 1; i < s.history().size(); ++i) {
        CHECK_FALSE(value_less(s.history()[i - 1].m_value, s.history()[i].m_value));
    }
}

TEST_CASE("direction counts")
{
    SequenceState s = init(one_sqrt2());
    CHECK(direction_counts(s) == std::vector<Integer>{0, 0});
    s = argmin_run(one_sqrt2(), 4);
    CHECK(monomial_word(s) == std::vector<Direction>{0, 1, 1, 0});
    CHECK(direction_counts(s) == std::vector<Integer>{2, 2});

    const SequenceState long_run = argmin_run(one_sqrt2(), 700);
    const auto counts = direction_counts(long_run);
    CHECK(counts[0] + counts[1] == 700);
}

TEST_CASE("starving directions")
{
    const SequenceState s = argmin_run(one_sqrt2(), 1000);
    CHECK(starving_directions(s, 50).empty());
    CHECK(starving_directions(s, 0).empty());
    CHECK_THROWS_AS(starving_directions(s, 1001), IndexOutOfRange);

    const SequenceState rr1 = replay(gen_notunion_rr1(60, true));
    CHECK(direction_counts(rr1)[2] == 0);
    for (long w : {2L, 10L, 60L}) {
        CHECK(starving_directions(rr1, w) == std::set<Direction>{2});
    }
}

TEST_CASE("change of direction")
{
    const SequenceState s = argmin_run(one_sqrt2(), 4);
    CHECK(s.history()[2].m_value == val({"-1", "1"}));
    CHECK(s.history()[3].m_value == val({"3", "-2"}));
    CHECK(change_of_direction(s, 2));
    CHECK_FALSE(change_of_direction(s, 1));
    CHECK_THROWS_AS(change_of_direction(s, 0), IndexOutOfRange);
    CHECK_THROWS_AS(change_of_direction(s, 5), IndexOutOfRange);
    for (long n = 1; n <= 4; ++n) {
        CHECK(change_of_direction(s, n) == maximal_ideal_in_square(s, n));
    }
}

TEST_CASE("quotient sequences")
{
    const SequenceState rr1 = replay(gen_notunion_rr1(30, true));
    const SequenceState flat = replay(gen_notunion_rr1(30, false));
    const SequenceState killed = quotient_sequence(rr1, 2);
    CHECK(killed.dimension() == 2);
    CHECK(killed.partial_sum() == flat.partial_sum());
    CHECK(killed.frame().values == flat.frame().values);
    CHECK(direction_counts(killed) == direction_counts(flat));

    const SequenceState a3 = replay(gen_713(5, true));
    const SequenceState a2 = replay(gen_713(5, false));
    const SequenceState ka = quotient_sequence(a3, 0);
    CHECK(ka.partial_sum() == a2.partial_sum());
    CHECK(ka.frame().values == a2.frame().values);
    CHECK(monomial_word(ka) == monomial_word(a2));

    CHECK_THROWS_AS(quotient_sequence(rr1, 0), KilledDirectionUsed);
}

TEST_CASE("quotient commutes with stepping")
{
    // z is large and never minimal over these steps.
    const ParameterFrame f = make_frame({val(basis(2), {"1"}), val(basis(2), {"0", "1"}), val(basis(2), {"50"})});
    SequenceState s = init(f);
    SequenceState flat = init(one_sqrt2());
    for (int i = 0; i < 40; ++i) {
        auto [next, dir] = step_argmin(std::move(s));
        s = std::move(next);
        flat = step_in_direction(std::move(flat), dir);
        const SequenceState k = quotient_sequence(s, 2);
        REQUIRE(k.frame().values == flat.frame().values);
        REQUIRE(k.partial_sum() == flat.partial_sum());
    }
}

TEST_CASE("first-use inequalities")
{
    SequenceState s = init(rational_frame({"1", "3/2", "7/4"}));
    for (int i = 0; i < 3; ++i) {
        s = step_argmin(std::move(s)).first;
    }
    CHECK(monomial_word(s) == std::vector<Direction>{0, 1, 2});
    const FirstUseReport r = check_prop_344(s);
    CHECK(r.first_use_order == std::vector<Direction>{0, 1, 2});
    CHECK(r.increasing);
    CHECK(r.bracketed);
    REQUIRE(r.s);
    CHECK(*r.s == 1);
    CHECK(r.partial_sums);
    CHECK(r.pass());

    CHECK(check_prop_344(argmin_run(one_sqrt2(), 2)).pass());
    CHECK_THROWS_AS(check_prop_344(argmin_run(one_sqrt2(), 1)), IncompleteCoverage);
}

TEST_CASE("floor ratio")
{
    CHECK(floor_ratio(val({"0", "1"}), val({"1", "0"})) == 1);
    CHECK(floor_ratio(val({"7", "0"}), val({"0", "1"})) == 4);
    CHECK(floor_ratio(val({"3", "0"}), val({"3/2", "0"})) == 2);
}

TEST_CASE("certified argmin agrees with exact comparisons")
{
    std::mt19937_64 rng(3);
    for (std::size_t d = 2; d <= 5; ++d) {
        const Scenario sc = gen_random_independent(d, rng() % 1000 + 1, 10);
        SequenceState s = init(sc.frame);
        for (int i = 0; i < 1500; ++i) {
            const Direction expect = slow_argmin(s.frame());
            auto [next, dir] = step_argmin(std::move(s));
            REQUIRE(dir == expect);
            s = std::move(next);
        }
    }
}

TEST_CASE("record lookup inside runs")
{
    SequenceState s = init(rational_frame({"1", "100"}));
    s = step_in_direction(std::move(s), 0, 10);
    CHECK(s.history().size() == 1);
    CHECK(s.step() == 10);
    CHECK(record_at(s, 7).repeat == 10);
    CHECK(s.partial_sum() == q("10"));
    CHECK(s.frame().values[1] == q("90"));
    CHECK(invariant_631_check(s));
}
