#include "lqt/value_vector.hpp"

#include "lqt/error.hpp"

#include <algorithm>
#include <sstream>

namespace lqt {

namespace {

// L <= 2^bits * sum_i nums[i] * g_i <= U.
void scaled_enclosure(const RealBasis& basis, std::span<const Integer> nums, unsigned bits,
                      Integer& lo, Integer& hi)
{
    lo = 0;
    hi = 0;
    for (std::size_t i = 0; i < nums.size(); ++i) {
        const Integer& c = nums[i];
        if (c == 0) {
            continue;
        }
        const DyadicEnclosure& e = basis.generator(i).enclose(bits);
        if (c > 0) {
            mpz_addmul(lo.get_mpz_t(), c.get_mpz_t(), e.lo.get_mpz_t());
            mpz_addmul(hi.get_mpz_t(), c.get_mpz_t(), e.hi.get_mpz_t());
        } else {
            mpz_addmul(lo.get_mpz_t(), c.get_mpz_t(), e.hi.get_mpz_t());
            mpz_addmul(hi.get_mpz_t(), c.get_mpz_t(), e.lo.get_mpz_t());
        }
    }
}

// Exact value when every generator carrying a nonzero coefficient is rational.
std::optional<Rational> exact_value(const RealBasis& basis, std::span<const Integer> nums,
                                    const Integer& den)
{
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (nums[i] != 0 && !basis.exact(i)) {
            return std::nullopt;
        }
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (nums[i] != 0) {
            sum += Rational(nums[i]) * *basis.exact(i);
        }
    }
    return make_rational(sum.get_num(), Integer(sum.get_den() * den));
}

std::size_t max_bits(std::span<const Integer> nums)
{
    std::size_t h = 0;
    for (const auto& n : nums) {
        h = std::max(h, bit_length(n));
    }
    return h;
}

} // namespace

ValueVector::ValueVector(BasisPtr basis)
    : basis_(std::move(basis))
{
    if (!basis_) {
        throw BasisMismatch("null basis");
    }
    numerators_.assign(basis_->size(), Integer(0));
}

ValueVector::ValueVector(BasisPtr basis, std::span<const Rational> coeffs)
    : ValueVector(std::move(basis))
{
    if (coeffs.size() > numerators_.size()) {
        throw BasisMismatch("coefficient vector longer than basis ("
                            + std::to_string(coeffs.size()) + " > "
                            + std::to_string(numerators_.size()) + ")");
    }
    Integer den = 1;
    for (const auto& c : coeffs) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    denominator_ = den;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        numerators_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    }
    normalize();
}

ValueVector::ValueVector(BasisPtr basis, std::vector<Integer> numerators, Integer denominator)
    : basis_(std::move(basis)), numerators_(std::move(numerators)),
      denominator_(std::move(denominator))
{
    normalize();
}

ValueVector ValueVector::from_numerators(BasisPtr basis, std::vector<Integer> numerators,
                                         Integer denominator)
{
    if (!basis || numerators.size() != basis->size()) {
        throw BasisMismatch("numerator vector does not match the basis size");
    }
    if (denominator == 0) {
        throw std::domain_error("zero denominator");
    }
    return ValueVector(std::move(basis), std::move(numerators), std::move(denominator));
}

ValueVector ValueVector::rational(BasisPtr basis, const Rational& q)
{
    const auto one = basis->one_index();
    if (!one) {
        throw BasisMismatch("basis has no generator equal to 1");
    }
    return unit(std::move(basis), *one, q);
}

ValueVector ValueVector::unit(BasisPtr basis, std::size_t index, const Rational& q)
{
    if (index >= basis->size()) {
        throw BasisMismatch("generator index " + std::to_string(index) + " out of range");
    }
    std::vector<Rational> coeffs(basis->size(), Rational(0));
    coeffs[index] = q;
    return ValueVector(std::move(basis), coeffs);
}

void ValueVector::normalize()
{
    if (denominator_ < 0) {
        denominator_ = -denominator_;
        for (auto& n : numerators_) {
            n = -n;
        }
    }
    Integer g = denominator_;
    for (const auto& n : numerators_) {
        if (g == 1) {
            break;
        }
        if (n != 0) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (is_zero()) {
        denominator_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& n : numerators_) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
        }
        mpz_divexact(denominator_.get_mpz_t(), denominator_.get_mpz_t(), g.get_mpz_t());
    }
}

Rational ValueVector::coefficient(std::size_t i) const
{
    return make_rational(numerators_.at(i), denominator_);
}

std::vector<Rational> ValueVector::coefficients() const
{
    std::vector<Rational> out;
    out.reserve(numerators_.size());
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        out.push_back(coefficient(i));
    }
    return out;
}

std::map<std::size_t, Rational> ValueVector::sparse() const
{
    std::map<std::size_t, Rational> out;
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        if (numerators_[i] != 0) {
            out.emplace(i, coefficient(i));
        }
    }
    return out;
}

bool ValueVector::is_zero() const
{
    return std::all_of(numerators_.begin(), numerators_.end(),
                       [](const Integer& n) { return n == 0; });
}

std::size_t ValueVector::height_bits() const
{
    return std::max(max_bits(numerators_), bit_length(denominator_));
}

namespace {

// Sign of sum_i nums[i] * g_i.
int numerator_sign(const RealBasis& basis, std::span<const Integer> nums)
{
    if (std::all_of(nums.begin(), nums.end(), [](const Integer& n) { return n == 0; })) {
        return 0;
    }
    if (auto q = exact_value(basis, nums, Integer(1))) {
        return sgn(*q);
    }
    const std::size_t height = max_bits(nums);
    const unsigned cap = basis.policy().cap_for(height);
    // Values reached by long runs sit roughly 2^-height below their
    // coefficients, so start near that precision. Powers of two keep the
    // generator enclosure caches warm.
    unsigned bits = 64;
    while (bits < height + 64 && bits < cap) {
        bits *= 2;
    }
    bits = std::min(bits, cap);
    thread_local Integer lo;
    thread_local Integer hi;
    for (;;) {
        scaled_enclosure(basis, nums, bits, lo, hi);
        if (lo > 0) {
            return 1;
        }
        if (hi < 0) {
            return -1;
        }
        if (bits >= cap) {
            throw IndeterminateComparison(
                "sign not separated from zero at " + std::to_string(bits)
                + " bits (coefficient height " + std::to_string(height)
                + " bits); the basis is probably rationally dependent");
        }
        bits = std::min(2 * bits, cap);
    }
}

} // namespace

int ValueVector::sign() const
{
    return numerator_sign(*basis_, numerators_);
}

void require_same_basis(const ValueVector& a, const ValueVector& b)
{
    if (a.basis() != b.basis() && !a.basis()->same_as(*b.basis())) {
        throw BasisMismatch("values over different bases");
    }
}

namespace {

ValueVector combine(const ValueVector& a, const ValueVector& b, bool subtract)
{
    require_same_basis(a, b);
    std::vector<Integer> nums(a.size());
    if (a.denominator() == b.denominator()) {
        for (std::size_t i = 0; i < nums.size(); ++i) {
            nums[i] = a.numerators()[i];
            if (subtract) {
                nums[i] -= b.numerators()[i];
            } else {
                nums[i] += b.numerators()[i];
            }
        }
        return ValueVector::from_numerators(a.basis(), std::move(nums), a.denominator());
    }
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    const Integer fa = l / a.denominator();
    const Integer fb = l / b.denominator();
    for (std::size_t i = 0; i < nums.size(); ++i) {
        nums[i] = a.numerators()[i] * fa;
        if (subtract) {
            nums[i] -= b.numerators()[i] * fb;
        } else {
            nums[i] += b.numerators()[i] * fb;
        }
    }
    return ValueVector::from_numerators(a.basis(), std::move(nums), std::move(l));
}

} // namespace

void ValueVector::accumulate(const ValueVector& b, bool subtract)
{
    require_same_basis(*this, b);
    if (denominator_ != b.denominator_) {
        *this = combine(*this, b, subtract);
        return;
    }
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        if (subtract) {
            mpz_sub(numerators_[i].get_mpz_t(), numerators_[i].get_mpz_t(), b.numerators_[i].get_mpz_t());
        } else {
            mpz_add(numerators_[i].get_mpz_t(), numerators_[i].get_mpz_t(), b.numerators_[i].get_mpz_t());
        }
    }
    normalize();
}

ValueVector& ValueVector::operator+=(const ValueVector& b)
{
    accumulate(b, false);
    return *this;
}

ValueVector& ValueVector::operator-=(const ValueVector& b)
{
    accumulate(b, true);
    return *this;
}

ValueVector operator+(const ValueVector& a, const ValueVector& b) { return combine(a, b, false); }
ValueVector operator-(const ValueVector& a, const ValueVector& b) { return combine(a, b, true); }

ValueVector operator-(const ValueVector& a)
{
    std::vector<Integer> nums(a.numerators_);
    for (auto& n : nums) {
        n = -n;
    }
    return {a.basis_, std::move(nums), a.denominator_};
}

ValueVector operator*(const Rational& s, const ValueVector& a)
{
    std::vector<Integer> nums(a.numerators_);
    for (auto& n : nums) {
        n *= s.get_num();
    }
    return {a.basis_, std::move(nums), a.denominator_ * s.get_den()};
}

ValueVector operator/(const ValueVector& a, const Rational& s)
{
    if (s == 0) {
        throw std::domain_error("division of a value by zero");
    }
    return Rational(1 / s) * a;
}

bool operator==(const ValueVector& a, const ValueVector& b)
{
    require_same_basis(a, b);
    return a.denominator_ == b.denominator_ && a.numerators_ == b.numerators_;
}

ValueVector value_add(const ValueVector& a, const ValueVector& b)
{
    return a + b;
}

std::strong_ordering value_cmp(const ValueVector& a, const ValueVector& b)
{
    if (a == b) {
        return std::strong_ordering::equal;
    }
    // Sign of a - b over a positive common multiple of the denominators; no
    // reduction needed.
    thread_local std::vector<Integer> diff;
    diff.resize(a.size());
    const auto& na = a.numerators();
    const auto& nb = b.numerators();
    if (a.denominator() == b.denominator()) {
        for (std::size_t i = 0; i < diff.size(); ++i) {
            mpz_sub(diff[i].get_mpz_t(), na[i].get_mpz_t(), nb[i].get_mpz_t());
        }
    } else {
        for (std::size_t i = 0; i < diff.size(); ++i) {
            mpz_mul(diff[i].get_mpz_t(), na[i].get_mpz_t(), b.denominator().get_mpz_t());
            mpz_submul(diff[i].get_mpz_t(), nb[i].get_mpz_t(), a.denominator().get_mpz_t());
        }
    }
    const int s = numerator_sign(*a.basis(), diff);
    if (s == 0) {
        return std::strong_ordering::equal;
    }
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

void value_enclosure(const ValueVector& a, unsigned bits, Integer& lo, Integer& hi)
{
    scaled_enclosure(*a.basis(), a.numerators(), bits, lo, hi);
    mpz_fdiv_q(lo.get_mpz_t(), lo.get_mpz_t(), a.denominator().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), hi.get_mpz_t(), a.denominator().get_mpz_t());
}

RationalInterval value_to_interval(const ValueVector& a, const Rational& width)
{
    if (width <= 0) {
        throw std::domain_error("interval width must be positive");
    }
    if (auto q = exact_value(*a.basis(), a.numerators(), a.denominator())) {
        return {*q, *q};
    }
    // Need 2^bits * den * width >= U - L, and U - L <= 2 * sum |num_i|.
    const std::size_t height = max_bits(a.numerators());
    const unsigned cap = a.basis()->policy().cap_for(height)
                         + static_cast<unsigned>(bit_length(ceil(1 / width)));
    unsigned bits = 64;
    for (;;) {
        Integer lo;
        Integer hi;
        scaled_enclosure(*a.basis(), a.numerators(), bits, lo, hi);
        Integer scale = a.denominator();
        scale <<= bits;
        RationalInterval out{make_rational(lo, scale), make_rational(hi, scale)};
        if (out.width() <= width) {
            return out;
        }
        if (bits >= cap) {
            throw IndeterminateComparison("interval of width " + format_rational(width)
                                          + " not reached at " + std::to_string(bits) + " bits");
        }
        bits = std::min(2 * bits, cap);
    }
}

std::vector<std::string> format_coefficients(const ValueVector& a)
{
    std::vector<std::string> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.push_back(format_rational(a.coefficient(i)));
    }
    return out;
}

std::string describe(const ValueVector& a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : a.sparse()) {
        if (!first) {
            os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            os << "-";
        }
        first = false;
        const Rational mag = abs(c);
        const std::string label = a.basis()->generator(i).label();
        if (label == "one") {
            os << format_rational(mag);
        } else if (mag == 1) {
            os << label;
        } else {
            os << format_rational(mag) << "*" << label;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

} // namespace lqt
