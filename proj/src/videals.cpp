#include "lqt/videals.hpp"

#include "lqt/error.hpp"
#include "lqt/forms.hpp"

#include <algorithm>

namespace lqt {

namespace {

using i128 = __int128;

constexpr unsigned kFixedBits = 64;

i128 to_i128(const Integer& n)
{
    // Callers keep |n| < 2^120.
    Integer mag = abs(n);
    Integer hi_part = mag >> 64;
    Integer lo_part = mag - (hi_part << 64);
    i128 r = (static_cast<i128>(hi_part.get_ui()) << 64) | static_cast<i128>(lo_part.get_ui());
    return n < 0 ? -r : r;
}

struct Fixed {
    i128 lo = 0;
    i128 hi = 0;
};

// Fixed-point enclosure of a positive value at scale 2^64, or nullopt when
// the value is too large for 128-bit sums.
std::optional<Fixed> fixed_enclosure(const ValueVector& v)
{
    const RationalInterval iv = value_to_interval(v, Rational(1, Integer(1) << (kFixedBits + 16)));
    const Integer scale = Integer(1) << kFixedBits;
    const Integer lo = floor(Rational(iv.lo * Rational(scale)));
    const Integer hi = ceil(Rational(iv.hi * Rational(scale)));
    if (bit_length(lo) > 100 || bit_length(hi) > 100) {
        return std::nullopt;
    }
    return Fixed{to_i128(lo), to_i128(hi)};
}

// Value comparisons of monomials against each other and against thresholds:
// fixed-point intervals first, exact arithmetic only when they overlap.
class ValueOracle {
public:
    explicit ValueOracle(const ParameterFrame& frame) : frame_(frame)
    {
        for (const auto& v : frame.values) {
            auto f = fixed_enclosure(v);
            if (!f) {
                fast_ = false;
                break;
            }
            fixed_.push_back(*f);
        }
    }

    std::size_t dimension() const { return frame_.dimension(); }
    const ParameterFrame& frame() const { return frame_; }

    Fixed enclose(const std::vector<Exponent>& e) const
    {
        Fixed f;
        if (!fast_) {
            return f;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            f.lo += static_cast<i128>(e[i]) * fixed_[i].lo;
            f.hi += static_cast<i128>(e[i]) * fixed_[i].hi;
        }
        return f;
    }

    ValueVector exact(const std::vector<Exponent>& e) const
    {
        return monomial_value(Monomial(e), frame_);
    }

    struct Target {
        ValueVector value;
        std::optional<Fixed> fixed;
    };

    Target target(const ValueVector& t) const
    {
        return {t, fast_ ? fixed_enclosure(t) : std::nullopt};
    }

    std::strong_ordering compare(const std::vector<Exponent>& e, const Target& t) const
    {
        if (fast_ && t.fixed) {
            const Fixed f = enclose(e);
            if (f.hi < t.fixed->lo) {
                return std::strong_ordering::less;
            }
            if (f.lo > t.fixed->hi) {
                return std::strong_ordering::greater;
            }
        }
        return value_cmp(exact(e), t.value);
    }

    std::strong_ordering compare(const std::vector<Exponent>& a, const std::vector<Exponent>& b) const
    {
        if (fast_) {
            const Fixed fa = enclose(a);
            const Fixed fb = enclose(b);
            if (fa.hi < fb.lo) {
                return std::strong_ordering::less;
            }
            if (fa.lo > fb.hi) {
                return std::strong_ordering::greater;
            }
        }
        return value_cmp(exact(a), exact(b));
    }

    // Largest k >= 0 known to satisfy k * v_i <= excess, as a starting point
    // for an exact upward search. Always a lower bound of the true floor.
    Exponent lower_multiple(std::size_t i, const std::vector<Exponent>& prefix, const Target& t) const
    {
        if (!fast_ || !t.fixed) {
            return 0;
        }
        const i128 excess = t.fixed->lo - enclose(prefix).hi;
        if (excess <= 0) {
            return 0;
        }
        return static_cast<Exponent>(excess / fixed_[i].hi);
    }

private:
    const ParameterFrame& frame_;
    std::vector<Fixed> fixed_;
    bool fast_ = true;
};

bool meets(std::strong_ordering c, bool strict)
{
    return strict ? c == std::strong_ordering::greater : c != std::strong_ordering::less;
}

void require_positive_frame(const ParameterFrame& frame)
{
    if (frame.dimension() < 1) {
        throw DimensionMismatch("empty frame");
    }
    for (const auto& v : frame.values) {
        if (v.sign() <= 0) {
            throw NonPositiveValue("frame value " + describe(v));
        }
    }
}

// All exponent vectors with value <= bound.
std::vector<std::vector<Exponent>> points_below(const ValueOracle& oracle, const ValueVector& bound)
{
    std::vector<std::vector<Exponent>> out;
    const auto target = oracle.target(bound);
    std::vector<Exponent> e(oracle.dimension(), 0);
    auto walk = [&](auto&& self, std::size_t i) -> void {
        if (i == e.size()) {
            out.push_back(e);
            return;
        }
        for (e[i] = 0; oracle.compare(e, target) != std::strong_ordering::greater; ++e[i]) {
            self(self, i + 1);
        }
        e[i] = 0;
    };
    walk(walk, 0);
    return out;
}

ValueLadder build_ladder(const ValueOracle& oracle, std::vector<std::vector<Exponent>> points)
{
    std::sort(points.begin(), points.end(), [&](const auto& a, const auto& b) {
        const auto c = oracle.compare(a, b);
        return c == std::strong_ordering::less || (c == std::strong_ordering::equal && a < b);
    });
    ValueLadder ladder;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && oracle.compare(points[i - 1], points[i]) == std::strong_ordering::equal) {
            ladder.entries.back().monomials.emplace_back(points[i]);
            continue;
        }
        ladder.entries.push_back({oracle.exact(points[i]), {Monomial(points[i])}});
    }
    return ladder;
}

} // namespace

ValueLadder enumerate_values(const ParameterFrame& frame, const ValueVector& bound)
{
    require_positive_frame(frame);
    ValueOracle oracle(frame);
    return build_ladder(oracle, points_below(oracle, bound));
}

ValueLadder enumerate_first_values(const ParameterFrame& frame, std::size_t count)
{
    require_positive_frame(frame);
    ValueOracle oracle(frame);
    ValueVector bound = frame.values.front();
    for (const auto& v : frame.values) {
        if (value_less(v, bound)) {
            bound = v;
        }
    }
    for (;;) {
        ValueLadder ladder = build_ladder(oracle, points_below(oracle, bound));
        if (ladder.entries.size() >= count) {
            ladder.entries.resize(count, ladder.entries.front());
            return ladder;
        }
        bound = Rational(2) * bound;
    }
}

MonomialIdeal videal_at(const ParameterFrame& frame, const ValueVector& threshold, bool strict)
{
    require_positive_frame(frame);
    if (threshold.sign() < 0) {
        throw PreconditionViolation("threshold must be nonnegative");
    }
    const std::size_t d = frame.dimension();
    ValueOracle oracle(frame);
    const auto target = oracle.target(threshold);
    std::vector<Monomial> gens;
    std::vector<Exponent> e(d, 0);

    // Walk the prefixes (e_0, ..., e_{d-2}) that do not yet reach the
    // threshold, plus the first one on each axis that does; for each, the
    // least last exponent that reaches it gives a candidate generator.
    auto walk = [&](auto&& self, std::size_t i) -> void {
        if (i + 1 == d) {
            e[i] = oracle.lower_multiple(i, e, target);
            while (!meets(oracle.compare(e, target), strict)) {
                ++e[i];
            }
            gens.emplace_back(e);
            e[i] = 0;
            return;
        }
        for (e[i] = 0;; ++e[i]) {
            if (meets(oracle.compare(e, target), strict)) {
                gens.emplace_back(e);
                break;
            }
            self(self, i + 1);
        }
        e[i] = 0;
    };
    walk(walk, 0);
    return minimalize(std::move(gens));
}

namespace {

ValueVector ideal_value(const ValueOracle& oracle, const MonomialIdeal& ideal)
{
    const auto& gens = ideal.generators();
    std::size_t best = 0;
    for (std::size_t i = 1; i < gens.size(); ++i) {
        if (oracle.compare(gens[i].exponents(), gens[best].exponents()) == std::strong_ordering::less) {
            best = i;
        }
    }
    return oracle.exact(gens[best].exponents());
}

bool ideal_contains(const MonomialIdeal& big, const MonomialIdeal& small)
{
    return std::all_of(small.generators().begin(), small.generators().end(),
                       [&](const Monomial& g) { return big.contains(g); });
}

} // namespace

VIdealChain videal_chain(const ParameterFrame& frame, std::size_t K)
{
    if (K < 1) {
        throw PreconditionViolation("a chain needs at least one ideal");
    }
    require_positive_frame(frame);
    ValueOracle oracle(frame);
    const ValueLadder ladder = enumerate_first_values(frame, K);

    VIdealChain chain;
    chain.ideals.push_back(MonomialIdeal::unit(frame.dimension()));
    for (std::size_t n = 0; n < K; ++n) {
        const ValueVector t = ideal_value(oracle, chain.ideals[n]);
        if (!(t == ladder.entries[n].value)) {
            throw PreconditionViolation("v(I_" + std::to_string(n) + ") = " + describe(t)
                                        + " but the ladder has " + describe(ladder.entries[n].value));
        }
        chain.thresholds.push_back(t);
        chain.colengths.push_back(ladder.entries[n].monomials.size());
        if (n + 1 == K) {
            break;
        }
        MonomialIdeal next = videal_at(frame, t, true);
        if (next == chain.ideals[n] || !ideal_contains(chain.ideals[n], next)) {
            throw PreconditionViolation("chain does not descend strictly at " + std::to_string(n));
        }
        chain.ideals.push_back(std::move(next));
    }
    return chain;
}

std::size_t colength_step(const ParameterFrame& frame, const VIdealChain& chain, std::size_t n)
{
    if (n >= chain.thresholds.size()) {
        throw IndexOutOfRange("chain position " + std::to_string(n));
    }
    ValueOracle oracle(frame);
    const auto target = oracle.target(chain.thresholds[n]);
    std::size_t count = 0;
    for (const auto& e : points_below(oracle, chain.thresholds[n])) {
        if (oracle.compare(e, target) == std::strong_ordering::equal) {
            ++count;
        }
    }
    return count;
}

std::vector<std::optional<std::size_t>> tau_bound(const VIdealChain& chain,
                                                  std::span<const Direction> dirs)
{
    // First principal prefix length for each ideal; principality persists
    // under further extension.
    std::vector<std::optional<std::size_t>> first;
    for (const auto& ideal : chain.ideals) {
        MonomialIdeal cur = ideal;
        std::optional<std::size_t> j;
        for (std::size_t k = 0;; ++k) {
            if (cur.is_principal()) {
                j = k;
                break;
            }
            if (k == dirs.size()) {
                break;
            }
            cur = extend_ideal(cur, dirs.subspan(k, 1));
        }
        first.push_back(j);
    }
    std::vector<std::optional<std::size_t>> tau{std::size_t(0)};
    std::optional<std::size_t> running = std::size_t(0);
    for (const auto& j : first) {
        if (!j || !running) {
            running.reset();
        } else {
            running = std::max(*running, *j);
        }
        tau.push_back(running);
    }
    return tau;
}

std::vector<std::optional<std::size_t>> tau_bound_scan(const VIdealChain& chain,
                                                       std::span<const Direction> dirs)
{
    std::vector<std::optional<std::size_t>> tau{std::size_t(0)};
    for (std::size_t n = 1; n <= chain.ideals.size(); ++n) {
        std::optional<std::size_t> found;
        for (std::size_t j = 0; j <= dirs.size() && !found; ++j) {
            bool all = true;
            for (std::size_t mu = 0; mu < n && all; ++mu) {
                all = extend_ideal(chain.ideals[mu], dirs.first(j)).is_principal();
            }
            if (all) {
                found = j;
            }
        }
        tau.push_back(found);
    }
    return tau;
}

LowIdealsReport check_remark_4175(const ParameterFrame& frame)
{
    require_positive_frame(frame);
    const std::size_t d = frame.dimension();
    LowIdealsReport report;
    report.order.resize(d);
    for (Direction i = 0; i < d; ++i) {
        report.order[i] = i;
    }
    std::sort(report.order.begin(), report.order.end(), [&](Direction a, Direction b) {
        return value_less(frame.values[a], frame.values[b]);
    });
    for (std::size_t i = 1; i < d; ++i) {
        if (!value_less(frame.values[report.order[i - 1]], frame.values[report.order[i]])) {
            throw PreconditionViolation("frame values must be pairwise distinct");
        }
    }
    const ValueVector& smallest = frame.values[report.order.front()];
    const ValueVector& largest = frame.values[report.order.back()];
    report.hypothesis = value_less(largest, Rational(2) * smallest);
    if (!report.hypothesis) {
        return report;
    }

    // R, then J_i = (x_i, ..., x_d) + m^2 for the variables by increasing
    // value, then m^2.
    const MonomialIdeal square = MonomialIdeal::maximal_power(d, 2);
    report.expected.push_back(MonomialIdeal::unit(d));
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Monomial> gens = square.generators();
        for (std::size_t k = i; k < d; ++k) {
            gens.push_back(Monomial::variable(d, report.order[k]));
        }
        report.expected.push_back(minimalize(std::move(gens)));
    }
    report.expected.push_back(square);

    const VIdealChain chain = videal_chain(frame, d + 2);
    report.actual = chain.ideals;
    report.colengths.assign(chain.colengths.begin(), chain.colengths.begin() + static_cast<long>(d + 1));
    report.pass = report.actual == report.expected
                  && std::all_of(report.colengths.begin(), report.colengths.end(),
                                 [](std::size_t c) { return c == 1; });
    return report;
}

} // namespace lqt
