#pragma once

#include "lqt/monomial.hpp"
#include "lqt/value_vector.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lqt {

// Values of the regular system of parameters of the current ring.
struct ParameterFrame {
    std::vector<std::string> names;
    std::vector<ValueVector> values;

    std::size_t dimension() const { return values.size(); }
    const BasisPtr& basis() const { return values.front().basis(); }
    ValueVector sum() const;
};

// Validates d >= 2, a shared basis and strictly positive values; names
// default to x, y, z, ...
ParameterFrame make_frame(std::vector<ValueVector> values, std::vector<std::string> names = {});

enum class StepKind { Monomial, Rescale };

struct StepRecord {
    StepKind kind = StepKind::Monomial;
    // Monomial steps always carry the direction; a rescale may carry the
    // direction of the (translated) transform it stands for.
    std::optional<Direction> dir;
    // v(m_n) at the step: the frame minimum before it.
    ValueVector m_value;
    // A record may stand for a run of identical monomial steps.
    Integer repeat = 1;
    // Index of the first step covered by this record.
    Integer first_step = 0;
    // Rescale only: the frame installed by the step.
    std::vector<ValueVector> new_values;
};

// State of a directed sequence R_0 ⊂ R_1 ⊂ ... of monomial local quadratic
// transforms, possibly interleaved with rescale steps that model translated
// (non-monomial) transforms by reassigning the frame values.
//
// The state is a value. The stepping functions below take it by value and
// return the successor, so `s = step_in_direction(std::move(s), dir)` costs
// no copy of the history.
class SequenceState {
public:
    const ParameterFrame& initial_frame() const { return initial_; }
    const ParameterFrame& frame() const { return frame_; }
    std::size_t dimension() const { return frame_.dimension(); }

    // Number of transforms taken so far (n).
    const Integer& step() const { return step_; }
    const std::vector<StepRecord>& history() const { return history_; }

    // E_n = sum of v(m_i) for i < n.
    const ValueVector& partial_sum() const { return partial_sum_; }

    // Exponent rewrite of the current monomial segment (reset by a rescale).
    const RewriteMatrix& rewrite() const { return rewrite_; }

    // First record of the current monomial segment, and the frame sum and
    // partial sum accumulated since then.
    std::size_t segment_start() const { return segment_start_; }
    const ValueVector& segment_frame_sum() const { return segment_frame_sum_; }
    const ValueVector& segment_partial_sum() const { return segment_partial_sum_; }

    bool has_rescale() const { return rescale_count_ > 0; }

private:
    friend SequenceState init(ParameterFrame frame);
    friend std::pair<SequenceState, Direction> step_argmin(SequenceState state);
    friend SequenceState step_in_direction(SequenceState state, Direction dir, const Integer& repeat);
    friend SequenceState rescale_step(SequenceState state, std::vector<ValueVector> new_values,
                                      std::optional<Direction> dir);

    explicit SequenceState(ParameterFrame frame);
    void advance(Direction dir, const Integer& repeat);

    ParameterFrame initial_;
    ParameterFrame frame_;
    Integer step_ = 0;
    std::vector<StepRecord> history_;
    ValueVector partial_sum_;
    RewriteMatrix rewrite_;
    std::size_t segment_start_ = 0;
    ValueVector segment_frame_sum_;
    ValueVector segment_partial_sum_;
    std::size_t rescale_count_ = 0;

    // Dyadic enclosures lo <= 2^bits * v <= hi of the frame values, carried
    // through monomial steps by interval subtraction. They decide most argmin
    // steps without an exact comparison; an overlap falls back to the exact
    // path and the enclosures are rebuilt a few steps later.
    struct FrameEnclosures {
        bool valid = false;
        unsigned bits = 0;
        unsigned cooldown = 0;
        std::vector<Integer> lo;
        std::vector<Integer> hi;
    };
    FrameEnclosures enclosures_;
    std::optional<Direction> certified_argmin();
};

SequenceState init(ParameterFrame frame);

// Transform in the direction of the unique minimal value. Throws
// AmbiguousDirection when the minimum is attained twice.
std::pair<SequenceState, Direction> step_argmin(SequenceState state);

// `repeat` consecutive transforms in direction `dir`; dir must stay minimal
// (ties allowed) for each of them.
SequenceState step_in_direction(SequenceState state, Direction dir, const Integer& repeat = 1);

// Replaces the frame by caller-supplied values. Contributes the current
// frame minimum (v(dir) when a direction is given) to the partial sum and
// starts a new monomial segment.
SequenceState rescale_step(SequenceState state, std::vector<ValueVector> new_values,
                           std::optional<Direction> dir = std::nullopt);

// Within the current monomial segment:
//   E_segment + (sum of frame)/(d-1) == (sum of frame at segment start)/(d-1)
// by exact equality.
bool invariant_631_check(const SequenceState& state);

// Monomial steps per direction (rescales excluded).
std::vector<Integer> direction_counts(const SequenceState& state);

// Directions absent from the last `window` directed steps. A rescale that
// records a direction counts as a step in that direction here. Throws
// IndexOutOfRange if fewer than `window` directed steps exist.
std::set<Direction> starving_directions(const SequenceState& state, const Integer& window);

// Number of steps that carry a direction.
Integer directed_step_count(const SequenceState& state);

// v(m_0) > v(m_{n-1}) from the recorded step values, 1 <= n <= step.
bool change_of_direction(const SequenceState& state, const Integer& n);

// m_0 R_n ⊂ m_n^2, decided from exponents: every original parameter,
// rewritten into the parameters of R_n, has degree >= 2. Requires the first
// n steps to be monomial.
bool maximal_ideal_in_square(const SequenceState& state, const Integer& n);

// The record covering step index k (0-based).
const StepRecord& record_at(const SequenceState& state, const Integer& k);

// Replays the history with parameter `killed` deleted (the sequence of
// R_n / killed_n R_n). Throws KilledDirectionUsed if `killed` ever was a
// direction.
SequenceState quotient_sequence(const SequenceState& state, Direction killed);

// Directions of the monomial steps in order, runs expanded. Throws
// IndexOutOfRange when that would exceed `limit` entries.
std::vector<Direction> monomial_word(const SequenceState& state, std::size_t limit = 1u << 24);

struct FirstUseReport {
    // Directions ordered by first use: w_1, w_2, ..., w_d.
    std::vector<Direction> first_use_order;
    bool increasing = false;                // 0 < a_1 < ... < a_d
    std::optional<std::size_t> increasing_violation;
    bool bracketed = false;                 // s a_1 < a_2 < (s+1) a_1
    std::optional<Integer> s;
    bool partial_sums = false;              // (j-2) a_j < a_1 + ... + a_{j-1}
    std::optional<std::size_t> partial_sums_violation;   // offending j

    bool pass() const { return increasing && bracketed && partial_sums; }
};

// Checks the three inequalities on the initial frame values under the
// first-use relabeling. Throws IncompleteCoverage if some direction never
// occurs and PreconditionViolation if the history contains a rescale.
FirstUseReport check_prop_344(const SequenceState& state);

// Largest integer s with s * a <= b, for positive a, b.
Integer floor_ratio(const ValueVector& b, const ValueVector& a);

} // namespace lqt
