#pragma once

#include "lqt/rational.hpp"
#include "lqt/real_basis.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lqt {

// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

// A real number sum_i c_i * g_i with rational c_i over a RealBasis.
//
// Stored as an integer numerator per generator over one positive common
// denominator, kept in lowest terms, so equal reals over an independent
// basis have identical representations. Values are immutable; arithmetic
// returns fresh vectors.
class ValueVector {
public:
    explicit ValueVector(BasisPtr basis);
    ValueVector(BasisPtr basis, std::span<const Rational> coeffs);

    // q * 1; the basis must contain the generator 1.
    static ValueVector rational(BasisPtr basis, const Rational& q);

    // sum_i numerators[i] * g_i / denominator, brought to lowest terms.
    static ValueVector from_numerators(BasisPtr basis, std::vector<Integer> numerators,
                                       Integer denominator);

    // q * g_index.
    static ValueVector unit(BasisPtr basis, std::size_t index, const Rational& q = 1);

    const BasisPtr& basis() const { return basis_; }
    std::size_t size() const { return numerators_.size(); }

    Rational coefficient(std::size_t i) const;
    std::vector<Rational> coefficients() const;
    std::map<std::size_t, Rational> sparse() const;

    const std::vector<Integer>& numerators() const { return numerators_; }
    const Integer& denominator() const { return denominator_; }

    bool is_zero() const;

    // Max bit length over the numerators and the denominator.
    std::size_t height_bits() const;

    // Sign of the represented real: -1, 0 or +1. Zero only for the zero
    // vector (independence contract); throws IndeterminateComparison when
    // refinement reaches the precision cap without separating from zero.
    int sign() const;

    friend ValueVector operator+(const ValueVector& a, const ValueVector& b);
    friend ValueVector operator-(const ValueVector& a, const ValueVector& b);
    friend ValueVector operator-(const ValueVector& a);
    friend ValueVector operator*(const Rational& s, const ValueVector& a);
    friend ValueVector operator*(const ValueVector& a, const Rational& s) { return s * a; }
    friend ValueVector operator/(const ValueVector& a, const Rational& s);

    // In place; reuses storage when the denominators agree.
    ValueVector& operator+=(const ValueVector& b);
    ValueVector& operator-=(const ValueVector& b);

    // Identity of representation; over an independent basis this is equality
    // of the represented reals.
    friend bool operator==(const ValueVector& a, const ValueVector& b);

private:
    ValueVector(BasisPtr basis, std::vector<Integer> numerators, Integer denominator);
    void accumulate(const ValueVector& b, bool subtract);
    void normalize();

    BasisPtr basis_;
    std::vector<Integer> numerators_;
    Integer denominator_{1};
};

void require_same_basis(const ValueVector& a, const ValueVector& b);

ValueVector value_add(const ValueVector& a, const ValueVector& b);

// Total order on represented reals.
std::strong_ordering value_cmp(const ValueVector& a, const ValueVector& b);

inline bool value_less(const ValueVector& a, const ValueVector& b)
{
    return value_cmp(a, b) == std::strong_ordering::less;
}

// Integers lo <= 2^bits * a <= hi.
void value_enclosure(const ValueVector& a, unsigned bits, Integer& lo, Integer& hi);

// Rational interval of width <= `width` containing the represented real.
RationalInterval value_to_interval(const ValueVector& a, const Rational& width);

// Rendering helpers for reports.
std::vector<std::string> format_coefficients(const ValueVector& a);
std::string describe(const ValueVector& a);

} // namespace lqt
