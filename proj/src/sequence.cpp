#include "lqt/sequence.hpp"

#include "lqt/error.hpp"

#include <algorithm>

namespace lqt {

namespace {

void require_positive(const ValueVector& v, const std::string& what)
{
    if (v.sign() <= 0) {
        throw NonPositiveValue(what + " has non-positive value " + describe(v));
    }
}

void require_direction(const SequenceState& state, Direction dir)
{
    if (dir >= state.dimension()) {
        throw IndexOutOfRange("direction " + std::to_string(dir) + " in dimension "
                              + std::to_string(state.dimension()));
    }
}

// Index of the minimal value and whether the minimum is attained twice.
std::pair<std::size_t, bool> frame_argmin(const std::vector<ValueVector>& values)
{
    std::size_t best = 0;
    bool tied = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const auto c = value_cmp(values[i], values[best]);
        if (c == std::strong_ordering::less) {
            best = i;
            tied = false;
        } else if (c == std::strong_ordering::equal) {
            tied = true;
        }
    }
    return {best, tied};
}

} // namespace

ValueVector ParameterFrame::sum() const
{
    ValueVector s(basis());
    for (const auto& v : values) {
        s += v;
    }
    return s;
}

ParameterFrame make_frame(std::vector<ValueVector> values, std::vector<std::string> names)
{
    if (values.size() < 2) {
        throw DimensionMismatch("a frame needs at least two parameters");
    }
    if (names.empty()) {
        names = default_names(values.size());
    }
    if (names.size() != values.size()) {
        throw DimensionMismatch("frame has " + std::to_string(values.size()) + " values but "
                                + std::to_string(names.size()) + " names");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        require_same_basis(values.front(), values[i]);
        require_positive(values[i], "parameter " + names[i]);
    }
    return {std::move(names), std::move(values)};
}

SequenceState::SequenceState(ParameterFrame frame)
    : initial_(frame), frame_(std::move(frame)), partial_sum_(initial_.basis()),
      rewrite_(initial_.dimension()), segment_frame_sum_(initial_.sum()),
      segment_partial_sum_(initial_.basis())
{
}

SequenceState init(ParameterFrame frame)
{
    frame = make_frame(std::move(frame.values), std::move(frame.names));
    return SequenceState(std::move(frame));
}

void SequenceState::advance(Direction dir, const Integer& repeat)
{
    const ValueVector m = frame_.values[dir];
    const ValueVector total = repeat == 1 ? m : Rational(repeat) * m;
    for (std::size_t w = 0; w < frame_.dimension(); ++w) {
        if (w != dir) {
            frame_.values[w] -= total;
        }
    }
    history_.push_back({StepKind::Monomial, dir, m, repeat, step_, {}});
    step_ += repeat;
    partial_sum_ += total;
    segment_partial_sum_ += total;
    rewrite_.apply(dir, repeat);
}

std::optional<Direction> SequenceState::certified_argmin()
{
    auto& e = enclosures_;
    const std::size_t d = frame_.dimension();
    if (!e.valid) {
        if (e.cooldown > 0) {
            --e.cooldown;
            return std::nullopt;
        }
        // Relative width 2^-128 at rebuild.
        std::size_t height = 0;
        for (const auto& v : frame_.values) {
            height = std::max(height, v.height_bits());
        }
        const unsigned cap = frame_.basis()->policy().cap_for(height);
        unsigned bits = 64;
        while (bits < height + 64 && bits < cap) {
            bits *= 2;
        }
        e.lo.resize(d);
        e.hi.resize(d);
        for (;;) {
            bool sharp = true;
            for (std::size_t i = 0; i < d && sharp; ++i) {
                value_enclosure(frame_.values[i], bits, e.lo[i], e.hi[i]);
                Integer w = e.hi[i] - e.lo[i];
                w <<= 128;
                sharp = e.lo[i] > 0 && w <= e.lo[i];
            }
            if (sharp) {
                break;
            }
            if (bits >= cap) {
                e.cooldown = 8;
                return std::nullopt;
            }
            bits = std::min(2 * bits, cap);
        }
        e.bits = bits;
        e.valid = true;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < d; ++i) {
        if (e.lo[i] < e.lo[best]) {
            best = i;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (i != best && !(e.hi[best] < e.lo[i])) {
            e.valid = false;
            e.cooldown = 8;
            return std::nullopt;
        }
    }
    return best;
}

std::pair<SequenceState, Direction> step_argmin(SequenceState state)
{
    Direction dir = 0;
    if (const auto fast = state.certified_argmin()) {
        dir = *fast;
    } else {
        const auto [exact, tied] = frame_argmin(state.frame_.values);
        if (tied) {
            throw AmbiguousDirection("minimum value " + describe(state.frame_.values[exact])
                                     + " attained by more than one parameter at step "
                                     + state.step_.get_str());
        }
        dir = exact;
    }
    auto& e = state.enclosures_;
    if (e.valid) {
        for (std::size_t w = 0; w < state.dimension(); ++w) {
            if (w != dir) {
                e.lo[w] -= e.hi[dir];
                e.hi[w] -= e.lo[dir];
            }
        }
    }
    state.advance(dir, 1);
    return {std::move(state), dir};
}

SequenceState step_in_direction(SequenceState state, Direction dir, const Integer& repeat)
{
    require_direction(state, dir);
    if (repeat < 1) {
        throw PreconditionViolation("repeat count must be positive");
    }
    const ValueVector& v = state.frame_.values[dir];
    const ValueVector run = repeat == 1 ? v : Rational(repeat) * v;
    for (std::size_t w = 0; w < state.dimension(); ++w) {
        if (w == dir) {
            continue;
        }
        const auto& vw = state.frame_.values[w];
        if (value_less(vw, v)) {
            throw DirectionNotMinimal(state.frame_.names[dir] + " is not minimal at step "
                                      + state.step_.get_str() + ": "
                                      + state.frame_.names[w] + " is smaller");
        }
        // The direction stays minimal through the run iff v(w) >= repeat * v(dir);
        // equality leaves v(w) = 0 after the run.
        const auto c = value_cmp(vw, run);
        if (c == std::strong_ordering::less) {
            throw DirectionNotMinimal(state.frame_.names[dir] + " stops being minimal within a run of "
                                      + repeat.get_str() + " steps");
        }
        if (c == std::strong_ordering::equal) {
            throw NonPositiveValue("parameter " + state.frame_.names[w]
                                   + " would reach value 0 at step "
                                   + Integer(state.step_ + repeat).get_str());
        }
    }
    state.enclosures_.valid = false;
    state.advance(dir, repeat);
    return state;
}

SequenceState rescale_step(SequenceState state, std::vector<ValueVector> new_values,
                           std::optional<Direction> dir)
{
    if (new_values.size() != state.dimension()) {
        throw DimensionMismatch("rescale supplies " + std::to_string(new_values.size())
                                + " values for dimension " + std::to_string(state.dimension()));
    }
    for (std::size_t i = 0; i < new_values.size(); ++i) {
        require_same_basis(state.frame_.values.front(), new_values[i]);
        require_positive(new_values[i], "rescaled parameter " + state.frame_.names[i]);
    }
    const auto [argmin, tied] = frame_argmin(state.frame_.values);
    if (dir) {
        require_direction(state, *dir);
        if (value_less(state.frame_.values[argmin], state.frame_.values[*dir])) {
            throw DirectionNotMinimal(state.frame_.names[*dir] + " is not minimal at step "
                                      + state.step_.get_str());
        }
    }
    const ValueVector m = state.frame_.values[dir.value_or(argmin)];

    state.history_.push_back({StepKind::Rescale, dir, m, Integer(1), state.step_, new_values});
    state.step_ += 1;
    state.partial_sum_ += m;
    state.frame_.values = std::move(new_values);
    state.rewrite_ = RewriteMatrix(state.dimension());
    state.segment_start_ = state.history_.size();
    state.segment_frame_sum_ = state.frame_.sum();
    state.segment_partial_sum_ = ValueVector(state.frame_.basis());
    ++state.rescale_count_;
    state.enclosures_.valid = false;
    return state;
}

bool invariant_631_check(const SequenceState& state)
{
    const Rational d1(static_cast<long>(state.dimension() - 1));
    const ValueVector lhs = state.segment_partial_sum() + state.frame().sum() / d1;
    return lhs == state.segment_frame_sum() / d1;
}

std::vector<Integer> direction_counts(const SequenceState& state)
{
    std::vector<Integer> counts(state.dimension(), Integer(0));
    for (const auto& rec : state.history()) {
        if (rec.kind == StepKind::Monomial) {
            counts[*rec.dir] += rec.repeat;
        }
    }
    return counts;
}

Integer directed_step_count(const SequenceState& state)
{
    Integer n = 0;
    for (const auto& rec : state.history()) {
        if (rec.dir) {
            n += rec.repeat;
        }
    }
    return n;
}

std::set<Direction> starving_directions(const SequenceState& state, const Integer& window)
{
    if (window < 0 || window > directed_step_count(state)) {
        throw IndexOutOfRange("window " + window.get_str() + " exceeds the "
                              + directed_step_count(state).get_str() + " directed steps");
    }
    std::vector<bool> seen(state.dimension(), false);
    Integer left = window;
    for (auto it = state.history().rbegin(); it != state.history().rend() && left > 0; ++it) {
        if (it->dir) {
            seen[*it->dir] = true;
            left -= std::min(left, it->repeat);
        }
    }
    std::set<Direction> out;
    if (window == 0) {
        return out;
    }
    for (Direction i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            out.insert(i);
        }
    }
    return out;
}

const StepRecord& record_at(const SequenceState& state, const Integer& k)
{
    if (k < 0 || k >= state.step()) {
        throw IndexOutOfRange("step " + k.get_str() + " of " + state.step().get_str());
    }
    const auto& h = state.history();
    auto it = std::upper_bound(h.begin(), h.end(), k,
                               [](const Integer& key, const StepRecord& r) { return key < r.first_step; });
    return *std::prev(it);
}

bool change_of_direction(const SequenceState& state, const Integer& n)
{
    if (n < 1 || n > state.step()) {
        throw IndexOutOfRange("prefix length " + n.get_str() + " outside 1.."
                              + state.step().get_str());
    }
    const auto& first = record_at(state, 0).m_value;
    const auto& last = record_at(state, n - 1).m_value;
    return value_cmp(first, last) == std::strong_ordering::greater;
}

bool maximal_ideal_in_square(const SequenceState& state, const Integer& n)
{
    if (n < 0 || n > state.step()) {
        throw IndexOutOfRange("prefix length " + n.get_str());
    }
    RewriteMatrix m(state.dimension());
    Integer left = n;
    for (const auto& rec : state.history()) {
        if (left == 0) {
            break;
        }
        if (rec.kind != StepKind::Monomial) {
            throw PreconditionViolation("prefix of length " + n.get_str()
                                        + " contains a non-monomial step");
        }
        const Integer take = std::min(left, rec.repeat);
        m.apply(*rec.dir, take);
        left -= take;
    }
    // Column i of m is the exponent vector of the i-th original parameter.
    for (std::size_t col = 0; col < m.dimension(); ++col) {
        Integer degree = 0;
        for (std::size_t row = 0; row < m.dimension(); ++row) {
            degree += m.at(row, col);
        }
        if (degree < 2) {
            return false;
        }
    }
    return true;
}

SequenceState quotient_sequence(const SequenceState& state, Direction killed)
{
    require_direction(state, killed);
    if (state.dimension() < 3) {
        throw DimensionMismatch("the quotient of a 2-dimensional sequence has dimension 1");
    }
    auto drop = [killed](const auto& v) {
        std::decay_t<decltype(v)> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i != killed) {
                out.push_back(v[i]);
            }
        }
        return out;
    };
    auto shift = [killed](Direction dir) { return dir > killed ? dir - 1 : dir; };

    for (const auto& rec : state.history()) {
        if (rec.dir && *rec.dir == killed) {
            throw KilledDirectionUsed(state.initial_frame().names[killed]
                                      + " is a direction at step " + rec.first_step.get_str());
        }
    }
    SequenceState q = init({drop(state.initial_frame().names), drop(state.initial_frame().values)});
    for (const auto& rec : state.history()) {
        if (rec.kind == StepKind::Monomial) {
            q = step_in_direction(std::move(q), shift(*rec.dir), rec.repeat);
        } else {
            std::optional<Direction> dir;
            if (rec.dir) {
                dir = shift(*rec.dir);
            }
            q = rescale_step(std::move(q), drop(rec.new_values), dir);
        }
    }
    return q;
}

std::vector<Direction> monomial_word(const SequenceState& state, std::size_t limit)
{
    std::vector<Direction> word;
    for (const auto& rec : state.history()) {
        if (rec.kind != StepKind::Monomial) {
            continue;
        }
        if (Integer(word.size()) + rec.repeat > Integer(static_cast<unsigned long>(limit))) {
            throw IndexOutOfRange("monomial word longer than " + std::to_string(limit));
        }
        word.insert(word.end(), rec.repeat.get_ui(), *rec.dir);
    }
    return word;
}

Integer floor_ratio(const ValueVector& b, const ValueVector& a)
{
    if (a.sign() <= 0 || b.sign() <= 0) {
        throw PreconditionViolation("floor_ratio needs positive values");
    }
    Rational width(1, 1u << 20);
    RationalInterval ia = value_to_interval(a, width);
    while (ia.lo <= 0) {
        width /= Rational(1u << 20);
        ia = value_to_interval(a, width);
    }
    // Relative accuracy ~2^-30 on both, then settle exactly.
    const Rational fine = ia.lo / Rational(1u << 30);
    ia = value_to_interval(a, fine);
    const RationalInterval ib = value_to_interval(b, fine);
    Integer s = floor(Rational(ib.lo / ia.hi));
    if (s < 0) {
        s = 0;
    }
    while (value_cmp(Rational(s + 1) * a, b) != std::strong_ordering::greater) {
        ++s;
    }
    while (s > 0 && value_less(b, Rational(s) * a)) {
        --s;
    }
    return s;
}

FirstUseReport check_prop_344(const SequenceState& state)
{
    if (state.has_rescale()) {
        throw PreconditionViolation("the relabeling argument needs a purely monomial history");
    }
    FirstUseReport report;
    std::vector<bool> used(state.dimension(), false);
    for (const auto& rec : state.history()) {
        if (!used[*rec.dir]) {
            used[*rec.dir] = true;
            report.first_use_order.push_back(*rec.dir);
        }
    }
    if (report.first_use_order.size() != state.dimension()) {
        throw IncompleteCoverage("only " + std::to_string(report.first_use_order.size()) + " of "
                                 + std::to_string(state.dimension()) + " directions occur");
    }
    std::vector<ValueVector> a;
    for (auto dir : report.first_use_order) {
        a.push_back(state.initial_frame().values[dir]);
    }

    report.increasing = a.front().sign() > 0;
    for (std::size_t i = 1; i < a.size() && report.increasing; ++i) {
        if (!value_less(a[i - 1], a[i])) {
            report.increasing = false;
            report.increasing_violation = i + 1;
        }
    }

    const Integer s = floor_ratio(a[1], a[0]);
    report.s = s;
    report.bracketed = s >= 1 && value_less(Rational(s) * a[0], a[1])
                       && value_less(a[1], Rational(s + 1) * a[0]);

    report.partial_sums = true;
    ValueVector prefix = a[0] + a[1];
    for (std::size_t j = 3; j <= a.size(); ++j) {
        const ValueVector lhs = Rational(static_cast<long>(j - 2)) * a[j - 1];
        if (!value_less(lhs, prefix)) {
            report.partial_sums = false;
            report.partial_sums_violation = j;
            break;
        }
        prefix += a[j - 1];
    }
    return report;
}

} // namespace lqt
