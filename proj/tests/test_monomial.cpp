#include "lqt/error.hpp"
#include "lqt/monomial.hpp"

#include <doctest.h>

#include <random>

using namespace lqt;

namespace {

MonomialIdeal ideal(std::vector<Monomial> gens) { return minimalize(std::move(gens)); }

} // namespace

TEST_CASE("degree and divisibility")
{
    CHECK(total_degree(Monomial{2, 1, 0}) == 3);
    CHECK(Monomial{0, 0}.is_unit());
    CHECK(Monomial{1, 0}.divides(Monomial{2, 1}));
    CHECK_FALSE(Monomial{0, 2}.divides(Monomial{2, 1}));
}

TEST_CASE("minimal generators")
{
    CHECK(ideal({{2, 0}, {1, 0}, {0, 3}}).generators() == std::vector<Monomial>{{0, 3}, {1, 0}});
    CHECK(ideal({{1, 1}, {1, 1}}).generators() == std::vector<Monomial>{{1, 1}});
    CHECK(ideal({{0, 0}, {3, 4}}).is_unit());
    CHECK_THROWS_AS(minimalize({}), EmptyGeneratorSet);
    CHECK_THROWS_AS(minimalize({{1, 0}, {1, 0, 0}}), DimensionMismatch);
}

TEST_CASE("minimalize is idempotent")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Exponent> e(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Monomial> gens;
        for (int k = 0; k < 6; ++k) {
            gens.push_back(Monomial{e(rng), e(rng), e(rng)});
        }
        const MonomialIdeal once = minimalize(gens);
        CHECK(minimalize(once.generators()) == once);
        for (const auto& g : gens) {
            CHECK(once.contains(g));
        }
    }
}

TEST_CASE("order of ideals")
{
    CHECK(ideal_order(ideal({{2, 0}, {0, 1}})) == 1);
    CHECK(ideal_order(MonomialIdeal::maximal_power(3, 4)) == 4);
    CHECK(ideal_order(MonomialIdeal::unit(2)) == 0);
}

TEST_CASE("rewriting a monomial")
{
    CHECK(rewrite_monomial(Monomial{2, 1}, 0) == Monomial{3, 1});
    CHECK(rewrite_monomial(Monomial{0, 1}, 0) == Monomial{1, 1});
    CHECK(rewrite_monomial(Monomial{2, 1}, 1) == Monomial{2, 3});
    CHECK(rewrite_monomial(Monomial{1, 2, 3}, 2) == Monomial{1, 2, 6});
}

TEST_CASE("transform of an ideal")
{
    CHECK(transform_ideal(ideal({{1, 1}, {0, 2}}), 0) == ideal({{0, 1}}));
    CHECK(transform_ideal(ideal({{1, 0}}), 0).is_unit());
    // The square of the maximal ideal in direction y becomes the unit ideal.
    CHECK(transform_ideal(MonomialIdeal::maximal_power(2, 2), 1).is_unit());
    CHECK(transform_ideal(ideal({{2, 0}, {0, 1}}), 0) == ideal({{1, 0}, {0, 1}}));
}

TEST_CASE("extension along a word")
{
    const std::vector<Direction> x{0};
    const std::vector<Direction> xy{0, 1};
    CHECK(extend_ideal(ideal({{1, 0}, {0, 1}}), x) == ideal({{1, 0}}));
    CHECK(extend_ideal(ideal({{2, 0}, {0, 1}}), x) == ideal({{2, 0}, {1, 1}}));
    const MonomialIdeal e = extend_ideal(ideal({{2, 0}, {0, 1}}), xy);
    CHECK(e == ideal({{1, 2}}));
    CHECK(is_principal(e));
}

TEST_CASE("rewrite matrix agrees with stepwise rewriting")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Direction> pick(0, 2);
    std::vector<Direction> word;
    for (int i = 0; i < 12; ++i) {
        word.push_back(pick(rng));
    }
    const RewriteMatrix m = rewrite_matrix(3, word);
    CHECK(m.determinant() == 1);
    const Monomial start{2, 0, 1};
    Monomial step = start;
    for (Direction d : word) {
        step = rewrite_monomial(step, d);
    }
    CHECK(m.rewrite(start) == step);

    RewriteMatrix runs(3);
    runs.apply(1, 5);
    CHECK(runs == rewrite_matrix(3, std::vector<Direction>(5, 1)));
}

TEST_CASE("exponent overflow is detected")
{
    CHECK_THROWS_AS(checked_add(~Exponent(0), 1), ExponentOverflow);
    CHECK_THROWS_AS(checked_mul(Exponent(1) << 40, Exponent(1) << 40), ExponentOverflow);
    // Fibonacci-size entries after a long alternating word.
    std::vector<Direction> word;
    for (int i = 0; i < 200; ++i) {
        word.push_back(i % 2);
    }
    CHECK_THROWS_AS(rewrite_matrix(2, word).rewrite(Monomial{1, 1}), ExponentOverflow);
}

TEST_CASE("rendering")
{
    const auto names = default_names(2);
    CHECK(format_monomial(Monomial{2, 1}, names) == "x^2*y");
    CHECK(format_monomial(Monomial{0, 0}, names) == "1");
    CHECK(default_names(5).front() == "x0");
}
