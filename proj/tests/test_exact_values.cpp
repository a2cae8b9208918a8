#include "support.hpp"

#include "lqt/error.hpp"

#include <doctest.h>

using namespace lqt;
using lqt::test::basis;
using lqt::test::val;

TEST_CASE("rational parse and format round trip")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(format_rational(Rational(3, 2)) == "3/2");
    CHECK(format_rational(make_rational(-4, 2)) == "-2");
    const std::string big = "123456789012345678901234567891/1024";
    CHECK(format_rational(parse_rational(big)) == big);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("value addition is coefficientwise")
{
    CHECK(val({"1", "0"}) + val({"0", "1"}) == val({"1", "1"}));
    CHECK(val({"3/2", "0"}) + val({"-1/2", "1"}) == val({"1", "1"}));
    ValueVector a = val({"1/3", "1/2"});
    a += val({"2/3", "-1/2"});
    CHECK(a == val({"1", "0"}));
    a -= val({"1", "0"});
    CHECK(a.is_zero());
}

TEST_CASE("comparison of irrational values")
{
    CHECK(value_less(val({"1", "0"}), val({"0", "1"})));
    CHECK(value_less(val({"0", "1"}), val({"3/2", "0"})));
    CHECK(value_cmp(val({"0", "1"}), val({"0", "1"})) == std::strong_ordering::equal);
    // sqrt2 - 1 against 2 - sqrt2: 0.414 < 0.586.
    CHECK(value_less(val({"-1", "1"}), val({"2", "-1"})));
    // 99/70 is a convergent just above sqrt2.
    CHECK(value_less(val({"0", "1"}), val({"99/70", "0"})));
    CHECK(value_less(val({"140/99", "0"}), val({"0", "1"})));
    CHECK(val({"-1", "1"}).sign() == 1);
    CHECK(val({"3", "-2"}).sign() == 1);
    CHECK(val({"-3", "2"}).sign() == -1);
}

TEST_CASE("comparison over three generators")
{
    // sqrt2 + sqrt3 = 3.1462...
    CHECK(value_less(val({"3146/1000", "0", "0"}), val({"0", "1", "1"})));
    CHECK(value_less(val({"0", "1", "1"}), val({"3147/1000", "0", "0"})));
}

TEST_CASE("values close to zero are separated")
{
    // (sqrt2 - 1)^40 as a + b sqrt2 with a, b exact: about 5e-16.
    Integer a = 1;
    Integer b = 0;
    for (int i = 0; i < 40; ++i) {
        const Integer na = -a + 2 * b;
        const Integer nb = a - b;
        a = na;
        b = nb;
    }
    const ValueVector tiny(basis(2), std::vector<Rational>{Rational(a), Rational(b)});
    CHECK(tiny.sign() == 1);
    CHECK(value_less(tiny, ValueVector::rational(basis(2), Rational(1, 1000000000))));
}

TEST_CASE("a dependent basis is reported as indeterminate")
{
    // sqrt2 and sqrt8 = 2 sqrt2 as separate generators.
    const auto dep = std::make_shared<const RealBasis>(
        std::vector<std::shared_ptr<const IntervalOracle>>{make_sqrt_oracle(2), make_sqrt_oracle(8)},
        PrecisionPolicy{256, 1});
    const ValueVector zero_in_disguise(dep, std::vector<Rational>{Rational(2), Rational(-1)});
    CHECK_THROWS_AS(zero_in_disguise.sign(), IndeterminateComparison);
}

TEST_CASE("mixing bases is rejected")
{
    CHECK_THROWS_AS(val({"1", "0"}) + val({"1", "0", "0"}), BasisMismatch);
}

TEST_CASE("intervals contain the value and respect the width")
{
    const Rational w1(1, 100);
    const RationalInterval r = value_to_interval(val({"0", "1"}), w1);
    CHECK(r.width() <= w1);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);

    const RationalInterval q = value_to_interval(val({"5/7", "0"}), w1);
    CHECK(q.lo == Rational(5, 7));
    CHECK(q.hi == Rational(5, 7));

    const Rational w2(1, 10);
    const RationalInterval s = value_to_interval(val({"1", "1"}), w2);
    CHECK(s.width() <= w2);
    // 1 + sqrt2 lies in [2.414, 2.415].
    CHECK(s.lo <= Rational(2415, 1000));
    CHECK(s.hi >= Rational(2414, 1000));
}

TEST_CASE("dyadic enclosure brackets the scaled value")
{
    Integer lo, hi;
    value_enclosure(val({"0", "1"}), 20, lo, hi);
    const Integer scale = Integer(1) << 20;
    CHECK(lo * lo <= 2 * scale * scale);
    CHECK(hi * hi >= 2 * scale * scale);
    CHECK(hi - lo <= 4);
}

TEST_CASE("lowest terms give one representation per real")
{
    const ValueVector a = val({"2/4", "4/8"});
    const ValueVector b = val({"1/2", "1/2"});
    CHECK(a == b);
    CHECK(a.denominator() == 2);
    CHECK(Rational(3) * a / Rational(3) == b);
}
