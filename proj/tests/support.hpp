#pragma once

#include "lqt/sequence.hpp"

#include <string>
#include <vector>

namespace lqt::test {

// Default basis {1, sqrt2, sqrt3, ...} of the given size.
inline BasisPtr basis(std::size_t n = 2) { return RealBasis::default_basis(n); }

// Value from rational strings over the default basis of matching size.
inline ValueVector val(const std::vector<std::string>& coeffs)
{
    std::vector<Rational> c;
    for (const auto& s : coeffs) {
        c.push_back(parse_rational(s));
    }
    return ValueVector(basis(c.size()), c);
}

inline ValueVector val(const BasisPtr& b, const std::vector<std::string>& coeffs)
{
    std::vector<Rational> c;
    for (const auto& s : coeffs) {
        c.push_back(parse_rational(s));
    }
    c.resize(b->size(), Rational(0));
    return ValueVector(b, c);
}

// Frame of rational values over {1, sqrt2}.
inline ParameterFrame rational_frame(const std::vector<std::string>& qs)
{
    std::vector<ValueVector> v;
    for (const auto& q : qs) {
        v.push_back(ValueVector::rational(basis(2), parse_rational(q)));
    }
    return make_frame(std::move(v));
}

// (1, sqrt2).
inline ParameterFrame one_sqrt2()
{
    return make_frame({val({"1", "0"}), val({"0", "1"})});
}

} // namespace lqt::test
