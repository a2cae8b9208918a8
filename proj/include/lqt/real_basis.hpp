#pragma once

#include "lqt/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lqt {

// Dyadic enclosure lo/2^bits <= g <= hi/2^bits of a positive real g.
struct DyadicEnclosure {
    Integer lo;
    Integer hi;
    unsigned bits = 0;
};

// A positive real that can be enclosed to any requested precision.
//
// Implementations must be safe to call concurrently. The enclosure at `bits`
// must contain the real and have width at most 2 units in the last place, so
// doubling `bits` strictly shrinks the interval width. The returned reference
// must stay valid for the lifetime of the oracle (implementations cache).
class IntervalOracle {
public:
    virtual ~IntervalOracle() = default;

    virtual const DyadicEnclosure& enclose(unsigned bits) const = 0;

    // The value itself when it is rational; lets comparisons short-circuit.
    virtual std::optional<Rational> exact() const { return std::nullopt; }

    // Stable textual identity, e.g. "one", "sqrt(2)". Two generators with the
    // same label are the same real.
    virtual std::string label() const = 0;
};

std::shared_ptr<const IntervalOracle> make_one_oracle();
std::shared_ptr<const IntervalOracle> make_sqrt_oracle(unsigned long n);

// Limits on interval refinement. The effective cap for a comparison is
// base_bits + per_coefficient_bit * H, where H is the bit height of the
// integer coefficient vector being signed. Long sequences produce
// coefficients thousands of bits tall, and a value of such a vector can sit
// that many bits below 1, so a flat cap would reject legitimate comparisons.
struct PrecisionPolicy {
    unsigned base_bits = 4096;
    unsigned per_coefficient_bit = 4;

    unsigned cap_for(std::size_t coefficient_bits) const
    {
        return base_bits + per_coefficient_bit * static_cast<unsigned>(coefficient_bits);
    }
};

// Ordered list of positive reals assumed linearly independent over Q.
// Independence is the caller's contract and is not verified; a dependent
// basis surfaces as IndeterminateComparison when two different coefficient
// vectors denote the same real.
class RealBasis {
public:
    explicit RealBasis(std::vector<std::shared_ptr<const IntervalOracle>> generators,
                       PrecisionPolicy policy = {});

    // {1, sqrt(2), sqrt(3), sqrt(5), ...}: `size` generators, the first being 1.
    static std::shared_ptr<const RealBasis> default_basis(std::size_t size);

    // The rational-only basis {1}.
    static std::shared_ptr<const RealBasis> rational();

    std::size_t size() const { return generators_.size(); }
    const IntervalOracle& generator(std::size_t i) const { return *generators_.at(i); }
    const PrecisionPolicy& policy() const { return policy_; }

    // Value of generator i when it is rational (cached at construction).
    const std::optional<Rational>& exact(std::size_t i) const { return exact_[i]; }
    bool all_rational() const { return all_rational_; }

    // Index of the generator equal to 1, if any.
    std::optional<std::size_t> one_index() const { return one_index_; }

    std::vector<std::string> labels() const;

    // Same generators in the same order (policy is not part of identity).
    bool same_as(const RealBasis& other) const;

private:
    std::vector<std::shared_ptr<const IntervalOracle>> generators_;
    PrecisionPolicy policy_;
    std::optional<std::size_t> one_index_;
    std::vector<std::optional<Rational>> exact_;
    bool all_rational_ = true;
};

using BasisPtr = std::shared_ptr<const RealBasis>;

// The first `count` primes.
std::vector<unsigned long> first_primes(std::size_t count);

} // namespace lqt
