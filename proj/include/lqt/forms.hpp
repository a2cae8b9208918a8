#pragma once

#include "lqt/monomial.hpp"
#include "lqt/sequence.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lqt {

// f = sum of lambda_i * g_i with unit coefficients lambda_i that never cancel.
// Only the support is stored; it is kept sorted and duplicate free.
class MonomialForm {
public:
    explicit MonomialForm(std::vector<Monomial> support);

    std::size_t dimension() const { return support_.front().dimension(); }
    const std::vector<Monomial>& support() const { return support_; }

    friend bool operator==(const MonomialForm&, const MonomialForm&) = default;

private:
    std::vector<Monomial> support_;
};

Exponent form_order(const MonomialForm& f);

// Rewrites every support monomial in direction `dir` and divides by
// dir^ord(f).
MonomialForm transform_form(const MonomialForm& f, Direction dir);

// Orders of f, T_dir0(f), T_dir1(T_dir0(f)), ...: dirs.size() + 1 entries.
std::vector<Exponent> ord_trace(const MonomialForm& f, std::span<const Direction> dirs);

ValueVector value_of_form(const MonomialForm& f, const ParameterFrame& frame);

// Value of a single monomial: sum of e_i * v(w_i).
ValueVector monomial_value(const Monomial& m, const ParameterFrame& frame);

struct OrderDropReport {
    std::size_t dimension = 0;
    std::vector<Direction> dirs;
    bool full_coverage = false;
    std::vector<Direction> missing;

    // Full coverage: number of forms checked and the forms whose order did
    // not drop (a non-empty list is a counterexample).
    std::uint64_t forms_checked = 0;
    std::vector<MonomialForm> non_dropping;

    // Missing direction w: the form {w} and its order trace.
    std::optional<MonomialForm> witness;
    std::vector<Exponent> witness_trace;

    bool pass = false;
};

// With every direction present in `dirs`: all nonunit forms whose support
// consists of monomials of degree <= exhaustive_degree (only when d <= 3),
// plus `samples` random forms of degree <= sample_degree, must drop in order
// along the word. With a direction w missing: the form {w} must keep order 1.
OrderDropReport check_theorem_33a(std::size_t d, std::span<const Direction> dirs,
                                   std::size_t samples = 200, std::uint64_t seed = 1,
                                   Exponent exhaustive_degree = 3, Exponent sample_degree = 6);

// Both directions of the criterion over every word of length <= max_length
// in dimensions 2..max_d and every nonunit support of degree <= max_degree.
struct OrderDropSweep {
    std::uint64_t words = 0;              // words examined
    std::uint64_t covering_pairs = 0;     // (form, covering word) pairs decided
    std::uint64_t witness_words = 0;      // non-covering words checked for the witness
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

OrderDropSweep sweep_theorem_33a(std::size_t max_d, Exponent max_degree, std::size_t max_length);

// Orders of f and g in R_n along an argmin-driven run. The order of an
// element in R_n is the least degree of its support rewritten into the
// parameters of R_n (extension, no division).
struct RatioRow {
    Integer n;
    Integer ord_f;
    Integer ord_g;
    Rational ratio;
    bool within_eps = false;
    // Bracketing p/q <= ratio < (p+1)/q, checked for each q whose quotients
    // f^q/g^p and g^(p+1)/f^q both lie in R_n.
    std::size_t brackets_applicable = 0;
    std::size_t brackets_failed = 0;
};

struct RatioLimitReport {
    ValueVector value_f;
    ValueVector value_g;
    std::vector<RatioRow> rows;
    std::optional<Integer> n0;   // first n after which every row is within eps
    bool bracketing_ok = true;
    bool bracketing_used = false;
};

RatioLimitReport ratio_limit_report(const MonomialForm& f, const MonomialForm& g,
                                    const SequenceState& state0, std::size_t steps,
                                    const Rational& eps, std::size_t max_q = 16);

enum class ComparabilitySide { PoverQ, QoverP };

struct ComparabilityResult {
    std::size_t t = 0;
    ComparabilitySide side = ComparabilitySide::PoverQ;
    bool consistent = false;   // side agrees with the order of v(p), v(q)
};

// Transforms the ideal (p, q) along argmin steps until one generator becomes
// a unit. Throws NotTerminated after max_steps.
ComparabilityResult comparability_index(const Monomial& p, const Monomial& q,
                                        const SequenceState& state0, std::size_t max_steps = 10000);

} // namespace lqt
