#include "support.hpp"

#include "lqt/error.hpp"
#include "lqt/gallery.hpp"

#include <doctest.h>

#include <map>

using namespace lqt;

namespace {

Rational as_rational(const ValueVector& v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        REQUIRE(v.coefficient(i) == 0);
    }
    return v.coefficient(0);
}

void check_checkpoints(const Scenario& s)
{
    std::map<std::size_t, Rational> seen;
    replay(s, [&](const SequenceState& st, std::size_t i) { seen[i] = as_rational(st.partial_sum()); });
    for (const auto& c : s.checkpoints) {
        REQUIRE(seen.count(c.after));
        CHECK(seen[c.after] == c.partial_sum);
    }
}

std::string scenario_fingerprint(const Scenario& s)
{
    std::string out;
    for (const auto& l : s.frame.basis()->labels()) {
        out += l + ";";
    }
    for (const auto& v : s.frame.values) {
        out += describe(v) + ";";
    }
    return out;
}

} // namespace

TEST_CASE("Shannon-type scenario")
{
    const Scenario s = gen_shannon_418(6);
    check_checkpoints(s);
    CHECK(s.checkpoints.front().partial_sum == 2);
    REQUIRE(s.limit);
    CHECK(*s.limit == Rational(8, 3));
    // Four terms per episode: c, c/2, c/4, c/4.
    const SequenceState st = replay(s);
    REQUIRE(st.history().size() >= 4);
    const Rational c = as_rational(st.history()[0].m_value);
    CHECK(as_rational(st.history()[1].m_value) == c / 2);
    CHECK(as_rational(st.history()[2].m_value) == c / 4);
    CHECK(as_rational(st.history()[3].m_value) == c / 4);
    CHECK(as_rational(st.partial_sum()) < 8 * Rational(1, 3));
}

TEST_CASE("alternating scenario with an idle coordinate")
{
    const Scenario s = gen_notunion_rr1(40, true);
    check_checkpoints(s);
    const SequenceState st = replay(s);
    CHECK(direction_counts(st)[2] == 0);
    CHECK(as_rational(st.partial_sum()) == 3 - 3 * Rational(1, 1 << 20));
}

TEST_CASE("episodic scenarios with term groups")
{
    for (const Scenario& s : {gen_713(8), gen_713(8, true), gen_714(6)}) {
        check_checkpoints(s);
        const SequenceState st = replay(s);
        for (const auto& g : s.groups) {
            CHECK(g.sum == 1);
        }
        CHECK(invariant_631_check(st));
    }
}

TEST_CASE("integer-valued scenario")
{
    const Scenario s = gen_dvr(3, 500);
    long n = 0;
    replay(s, [&](const SequenceState& st, std::size_t) {
        ++n;
        REQUIRE(as_rational(st.partial_sum()) >= st.step());
    });
    CHECK(n > 0);
}

TEST_CASE("random scenarios are deterministic")
{
    const Scenario a = gen_random_independent(3, 42, 200);
    const Scenario b = gen_random_independent(3, 42, 200);
    const Scenario c = gen_random_independent(3, 43, 200);
    CHECK(scenario_fingerprint(a) == scenario_fingerprint(b));
    CHECK(scenario_fingerprint(a) != scenario_fingerprint(c));
    REQUIRE(a.small_by_step);
    const SequenceState st = replay(a);
    CHECK(st.step() == 200);
    CHECK(random_unit_frame(4, 9).values == random_unit_frame(4, 9).values);
}

TEST_CASE("presets")
{
    const auto names = list_presets();
    CHECK(names.size() >= 6);
    for (const auto& n : names) {
        CHECK_NOTHROW(preset(n, 4));
    }
    CHECK_THROWS_AS(preset("nope"), ConfigError);
}
