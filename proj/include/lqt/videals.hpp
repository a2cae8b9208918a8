#pragma once

#include "lqt/monomial.hpp"
#include "lqt/sequence.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lqt {

// A realized value and the monomials attaining it.
struct LadderEntry {
    ValueVector value;
    std::vector<Monomial> monomials;
};

// Distinct values of monomials, ascending, starting with 0.
struct ValueLadder {
    std::vector<LadderEntry> entries;
};

// All values sum e_i v(w_i) <= bound, ascending.
ValueLadder enumerate_values(const ParameterFrame& frame, const ValueVector& bound);

// Smallest ladder holding at least `count` values.
ValueLadder enumerate_first_values(const ParameterFrame& frame, std::size_t count);

// Minimal generators of the monomial ideal {a : v(a) >= threshold}, or
// v(a) > threshold when strict.
MonomialIdeal videal_at(const ParameterFrame& frame, const ValueVector& threshold, bool strict);

struct VIdealChain {
    std::vector<MonomialIdeal> ideals;     // I_0 = R, I_1, ...
    std::vector<ValueVector> thresholds;   // v(I_n)
    std::vector<std::size_t> colengths;    // monomials of value exactly v(I_n)
};

// First K v-ideals. I_{n+1} is built from I_n alone, as the monomials of
// value > v(I_n); the ladder is used only to cross-check the thresholds and
// colengths. Throws PreconditionViolation if the two disagree or the chain
// fails to descend strictly.
VIdealChain videal_chain(const ParameterFrame& frame, std::size_t K);

// Number of monomials of value exactly v(I_n).
std::size_t colength_step(const ParameterFrame& frame, const VIdealChain& chain, std::size_t n);

// tau[n] for n = 1 .. chain size: least j such that I_mu R_j is principal
// for every mu <= n - 1, with R_j reached by the first j letters of `dirs`.
// nullopt when the word runs out first. tau[0] = 0 (no ideals involved).
std::vector<std::optional<std::size_t>> tau_bound(const VIdealChain& chain,
                                                  std::span<const Direction> dirs);

// The same numbers by a direct scan over j, used as a cross-check.
std::vector<std::optional<std::size_t>> tau_bound_scan(const VIdealChain& chain,
                                                       std::span<const Direction> dirs);

struct LowIdealsReport {
    bool hypothesis = false;     // max v(w) < 2 min v(w)
    std::vector<Direction> order;   // variables by increasing value
    std::vector<MonomialIdeal> expected;
    std::vector<MonomialIdeal> actual;
    std::vector<std::size_t> colengths;
    bool pass = false;
};

LowIdealsReport check_remark_4175(const ParameterFrame& frame);

} // namespace lqt
