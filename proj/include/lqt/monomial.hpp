#pragma once

#include "lqt/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lqt {

using Exponent = std::uint64_t;
using Direction = std::size_t;

// Exponent arithmetic that throws ExponentOverflow instead of wrapping.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

// x^a y^b ... z^c as the exponent vector (a, b, ..., c).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Exponent> exponents) : exponents_(std::move(exponents)) {}
    Monomial(std::initializer_list<Exponent> exponents) : exponents_(exponents) {}

    static Monomial one(std::size_t d) { return Monomial(std::vector<Exponent>(d, 0)); }
    static Monomial variable(std::size_t d, Direction i, Exponent power = 1);

    std::size_t dimension() const { return exponents_.size(); }
    Exponent operator[](std::size_t i) const { return exponents_[i]; }
    const std::vector<Exponent>& exponents() const { return exponents_; }

    Exponent total_degree() const;
    bool is_unit() const;
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<Exponent> exponents_;
};

Exponent total_degree(const Monomial& m);

// The same ring element written in the parameters of the monomial quadratic
// transform in direction `dir`: every other parameter w becomes dir * w', so
// the dir-exponent becomes the total degree.
Monomial rewrite_monomial(const Monomial& m, Direction dir);

// Monomial ideal stored as its unique minimal monomial generating set,
// sorted lexicographically. The unit ideal is {(0, ..., 0)}.
class MonomialIdeal {
public:
    std::size_t dimension() const { return dimension_; }
    const std::vector<Monomial>& generators() const { return generators_; }

    Exponent order() const;
    bool is_principal() const { return generators_.size() == 1; }
    bool is_unit() const { return is_principal() && generators_.front().is_unit(); }
    bool contains(const Monomial& m) const;

    static MonomialIdeal unit(std::size_t d);
    // m^k
    static MonomialIdeal maximal_power(std::size_t d, Exponent k);

    friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

private:
    friend MonomialIdeal minimalize(std::vector<Monomial> gens);
    MonomialIdeal(std::size_t d, std::vector<Monomial> gens)
        : dimension_(d), generators_(std::move(gens)) {}

    std::size_t dimension_ = 0;
    std::vector<Monomial> generators_;
};

// Drops every generator divisible by another one. Throws EmptyGeneratorSet on
// empty input and DimensionMismatch on ragged input.
MonomialIdeal minimalize(std::vector<Monomial> gens);

Exponent ideal_order(const MonomialIdeal& ideal);

// Transform of a monomial ideal under the monomial quadratic transform in
// direction `dir`: rewrite, then divide by dir^ord(I).
MonomialIdeal transform_ideal(const MonomialIdeal& ideal, Direction dir);

// Extension I * R_j along a word of directions (rewrite only, no division).
MonomialIdeal extend_ideal(const MonomialIdeal& ideal, std::span<const Direction> dirs);

bool is_principal(const MonomialIdeal& ideal);

// Cumulative exponent rewrite M = E_{dir_{n-1}} ... E_{dir_0}, where E_dir is
// the identity with row `dir` replaced by all ones. M * e expresses the
// monomial with exponents e (in the original parameters) in the current
// parameters. Entries grow exponentially with the word length, hence Integer.
class RewriteMatrix {
public:
    explicit RewriteMatrix(std::size_t d);

    std::size_t dimension() const { return dimension_; }
    const Integer& at(std::size_t row, std::size_t col) const { return entries_[row * dimension_ + col]; }

    // Left-multiplies by E_dir^repeat.
    void apply(Direction dir, const Integer& repeat = 1);

    // Throws ExponentOverflow if an entry of the product does not fit.
    Monomial rewrite(const Monomial& m) const;

    // Exact determinant (fraction-free elimination).
    Integer determinant() const;

    friend bool operator==(const RewriteMatrix&, const RewriteMatrix&) = default;

private:
    std::size_t dimension_;
    std::vector<Integer> entries_;
};

RewriteMatrix rewrite_matrix(std::size_t d, std::span<const Direction> dirs);

// "x^2*y" style rendering; "1" for the unit monomial.
std::string format_monomial(const Monomial& m, std::span<const std::string> names);
std::string format_ideal(const MonomialIdeal& ideal, std::span<const std::string> names);

// Default variable labels: x, y, z, w for d <= 4, otherwise x0, x1, ...
std::vector<std::string> default_names(std::size_t d);

} // namespace lqt
