#include "lqt/gallery.hpp"

#include "lqt/error.hpp"

#include <algorithm>
#include <random>

namespace lqt {

PlanStep PlanStep::monomial(Direction dir, Integer repeat)
{
    PlanStep s;
    s.kind = Kind::Monomial;
    s.dir = dir;
    s.repeat = std::move(repeat);
    return s;
}

PlanStep PlanStep::rescale(std::optional<Direction> dir, std::vector<ValueVector> values)
{
    PlanStep s;
    s.kind = Kind::Rescale;
    s.rescale_dir = dir;
    s.values = std::move(values);
    return s;
}

PlanStep PlanStep::argmin(std::size_t count, bool reset_on_tie)
{
    PlanStep s;
    s.kind = Kind::Argmin;
    s.count = count;
    s.reset_on_tie = reset_on_tie;
    return s;
}

namespace {

// Indices attaining the frame minimum.
std::vector<Direction> minimal_indices(const ParameterFrame& frame)
{
    std::vector<Direction> out{0};
    for (Direction i = 1; i < frame.dimension(); ++i) {
        const auto c = value_cmp(frame.values[i], frame.values[out.front()]);
        if (c == std::strong_ordering::less) {
            out.assign(1, i);
        } else if (c == std::strong_ordering::equal) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace

SequenceState replay(const Scenario& scenario, const ReplayObserver& observer)
{
    SequenceState state = init(scenario.frame);
    for (std::size_t i = 0; i < scenario.plan.size(); ++i) {
        const PlanStep& step = scenario.plan[i];
        switch (step.kind) {
        case PlanStep::Kind::Monomial:
            state = step_in_direction(std::move(state), step.dir, step.repeat);
            if (observer) {
                observer(state, i);
            }
            break;
        case PlanStep::Kind::Rescale:
            state = rescale_step(std::move(state), step.values, step.rescale_dir);
            if (observer) {
                observer(state, i);
            }
            break;
        case PlanStep::Kind::Argmin:
            for (std::size_t k = 0; k < step.count; ++k) {
                if (step.reset_on_tie) {
                    const auto mins = minimal_indices(state.frame());
                    if (mins.size() > 1) {
                        state = rescale_step(std::move(state), state.initial_frame().values, mins.front());
                        if (observer) {
                            observer(state, i);
                        }
                        continue;
                    }
                }
                state = step_argmin(std::move(state)).first;
                if (observer) {
                    observer(state, i);
                }
            }
            break;
        }
    }
    return state;
}

namespace {

ValueVector q(const Rational& r)
{
    return ValueVector::rational(RealBasis::rational(), r);
}

Rational pow2(long k)
{
    Rational r(1);
    if (k >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

void require_positive_count(std::size_t n, const char* what)
{
    if (n < 1) {
        throw PreconditionViolation(std::string(what) + " must be at least 1");
    }
}

} // namespace

Scenario gen_shannon_418(std::size_t episodes)
{
    require_positive_count(episodes, "episodes");
    Scenario s;
    s.name = "shannon-4.18";
    s.kind = ScenarioKind::ShannonType;
    s.frame = make_frame({q(1), q(Rational(3, 2)), q(Rational(7, 4))});
    s.limit = Rational(8, 3);
    for (std::size_t k = 0; k < episodes; ++k) {
        // Episode at scale c: frame (c, 3c/2, 7c/4), steps x, y, z leave
        // (c/4, c/4, c/4), and the translated x-step installs the next frame.
        const Rational c = pow2(-2 * static_cast<long>(k));
        s.plan.push_back(PlanStep::monomial(0));
        s.plan.push_back(PlanStep::monomial(1));
        s.plan.push_back(PlanStep::monomial(2));
        const Rational next = c / 4;
        s.plan.push_back(PlanStep::rescale(0, {q(next), q(next * Rational(3, 2)), q(next * Rational(7, 4))}));
        s.checkpoints.push_back({s.plan.size() - 1, Rational(8, 3) * (1 - pow2(-2 * static_cast<long>(k + 1)))});
    }
    return s;
}

Scenario gen_notunion_rr1(std::size_t steps, bool embed3d)
{
    require_positive_count(steps, "steps");
    Scenario s;
    s.name = embed3d ? "rr1" : "rr1-2d";
    s.kind = ScenarioKind::NotUnionRR1;
    const Rational z0 = 4;
    std::vector<ValueVector> start{q(1), q(1)};
    if (embed3d) {
        start.push_back(q(z0));
        s.idle_direction = 2;
    }
    s.frame = make_frame(start);
    s.limit = Rational(3);

    // Terms 1, 1/2, 1/2, 1/4, 1/4, ...: from (c, c) the translated x-step
    // contributes c and leaves (c, c/2); the y-step contributes c/2 and
    // leaves (c/2, c/2).
    Rational e = 0;
    for (std::size_t i = 0; i < steps; ++i) {
        const Rational c = pow2(-static_cast<long>(i / 2));
        if (i % 2 == 0) {
            e += c;
            std::vector<ValueVector> next{q(c), q(c / 2)};
            if (embed3d) {
                next.push_back(q(z0 - e));
            }
            s.plan.push_back(PlanStep::rescale(0, std::move(next)));
        } else {
            e += c / 2;
            s.plan.push_back(PlanStep::monomial(1));
        }
        s.checkpoints.push_back({i, e});
    }
    return s;
}

Scenario gen_713(std::size_t episodes, bool embed3d)
{
    require_positive_count(episodes, "episodes");
    Scenario s;
    s.name = embed3d ? "gmr-7.13-3d" : "gmr-7.13";
    s.kind = ScenarioKind::Divergent2;
    // Coordinates (y, z) of the quotient rings A_n, optionally with the
    // killed parameter x in front. x is large enough never to be minimal.
    const std::size_t off = embed3d ? 1 : 0;
    const Rational x0 = Rational(static_cast<unsigned long>(episodes + 4));
    Rational e = 0;
    auto frame = [&](const Rational& y, const Rational& z) {
        std::vector<ValueVector> v;
        if (embed3d) {
            v.push_back(q(x0 - e));
        }
        v.push_back(q(y));
        v.push_back(q(z));
        return v;
    };
    s.frame = make_frame(frame(1, Rational(3, 2)),
                         embed3d ? std::vector<std::string>{"x", "y", "z"}
                                 : std::vector<std::string>{"y", "z"});
    if (embed3d) {
        s.idle_direction = 0;
    }

    for (std::size_t n = 0; n < episodes; ++n) {
        // Frame (2^-n, (2*2^n + 1)/2 * 2^-n): y-run of 2^n terms 2^-n, then z,
        // then the translated y-step. Episode 0 starts from (1, 3/2).
        const Rational y = pow2(-static_cast<long>(n));
        const Integer run = Integer(1) << static_cast<unsigned>(n);
        s.plan.push_back(PlanStep::monomial(off, run));
        e += Rational(run) * y;
        if (n > 0) {
            s.groups.push_back({s.plan.size() - 1, Rational(1)});
        }
        s.plan.push_back(PlanStep::monomial(off + 1));
        e += y / 2;
        const Rational next = y / 2;
        e += next;
        const Rational z_next = (2 * pow2(static_cast<long>(n + 1)) + 1) / Rational(2) * next;
        s.plan.push_back(PlanStep::rescale(off, frame(next, z_next)));
        s.checkpoints.push_back({s.plan.size() - 1, e});
    }
    return s;
}

Scenario gen_714(std::size_t episodes)
{
    require_positive_count(episodes, "episodes");
    Scenario s;
    s.name = "gmr-7.14";
    s.kind = ScenarioKind::Divergent3;
    s.frame = make_frame({q(1), q(Rational(5, 2)), q(Rational(11, 4))}, {"y", "z", "w"});
    Rational e = 0;
    for (std::size_t n = 0; n < episodes; ++n) {
        // Frame y = 4^-n, z = 1 + y/2, w = 1 + 3y/4 (episode 0: (1, 5/2, 11/4)):
        // y-run of 4^n terms 4^-n (two terms 1 in episode 0), z, w, then the
        // translated y-step.
        const Rational y = pow2(-2 * static_cast<long>(n));
        const Integer run = n == 0 ? Integer(2) : Integer(1) << static_cast<unsigned>(2 * n);
        s.plan.push_back(PlanStep::monomial(0, run));
        e += Rational(run) * y;
        if (n > 0) {
            s.groups.push_back({s.plan.size() - 1, Rational(1)});
            s.checkpoints.push_back({s.plan.size() - 1, e});
        }
        s.plan.push_back(PlanStep::monomial(1));
        e += y / 2;
        s.plan.push_back(PlanStep::monomial(2));
        e += y / 4;
        const Rational ny = y / 4;
        e += ny;
        const Rational nz = 1 + ny / 2;
        const Rational nw = 1 + 3 * ny / 4;
        s.plan.push_back(PlanStep::rescale(0, {q(ny), q(nz), q(nw)}));
        s.checkpoints.push_back({s.plan.size() - 1, e});
    }
    return s;
}

Scenario gen_dvr(std::size_t d, std::size_t steps)
{
    if (d < 2) {
        throw PreconditionViolation("dimension must be at least 2");
    }
    Scenario s;
    s.name = "dvr";
    s.kind = ScenarioKind::Dvr;
    std::vector<ValueVector> v;
    for (std::size_t i = 1; i <= d; ++i) {
        v.push_back(q(Rational(static_cast<unsigned long>(i))));
    }
    s.frame = make_frame(std::move(v));
    s.plan.push_back(PlanStep::argmin(steps, true));
    return s;
}

namespace {

// Rational a/b with a, b in 1..9.
Rational small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> digit(1, 9);
    const int a = digit(rng);
    const int b = digit(rng);
    return make_rational(a, b);
}

struct RandomFrameParts {
    BasisPtr basis;
    std::vector<std::size_t> generator;   // basis index per coordinate
};

// Distinct generators for d coordinates: one rational slot, the others
// square roots of distinct primes among the first d + 3.
RandomFrameParts random_generators(std::size_t d, std::mt19937_64& rng)
{
    std::vector<std::size_t> pool;
    for (std::size_t i = 1; i <= d + 3; ++i) {
        pool.push_back(i);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    RandomFrameParts parts;
    parts.generator.assign(pool.begin(), pool.begin() + static_cast<long>(d - 1));
    parts.generator.push_back(0);
    std::shuffle(parts.generator.begin(), parts.generator.end(), rng);
    const std::size_t top = *std::max_element(parts.generator.begin(), parts.generator.end());
    parts.basis = RealBasis::default_basis(top + 1);
    return parts;
}

} // namespace

Scenario gen_random_independent(std::size_t d, std::uint64_t seed, std::size_t steps)
{
    if (d < 2 || d > 6) {
        throw PreconditionViolation("random scenarios need 2 <= d <= 6");
    }
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + d);
    const RandomFrameParts parts = random_generators(d, rng);

    // Build the frame backwards. Start from small values c_i * g_i and undo
    // transforms along a random word: undoing a step in direction dir adds
    // v(dir) to every other value, so dir is the strict minimum when the
    // step is replayed forwards. Stop once every direction was used and the
    // values grew by 10^7, then scale into (0, 1). The forward argmin run
    // retraces the word and ends at the small frame divided by the scale.
    std::vector<ValueVector> v;
    for (std::size_t i = 0; i < d; ++i) {
        v.push_back(ValueVector::unit(parts.basis, parts.generator[i], small_rational(rng)));
    }
    auto upper = [](const ValueVector& x) { return value_to_interval(x, Rational(1, 1024)).hi; };
    Rational final_max = 0;
    for (const auto& x : v) {
        final_max = std::max(final_max, upper(x));
    }
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    std::vector<bool> used(d, false);
    std::size_t length = 0;
    for (;;) {
        Rational current = 0;
        for (const auto& x : v) {
            current = std::max(current, upper(x));
        }
        const bool covered = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
        if (covered && current >= Rational(10000000) * final_max) {
            break;
        }
        const Direction dir = pick(rng);
        used[dir] = true;
        const ValueVector m = v[dir];
        for (std::size_t w = 0; w < d; ++w) {
            if (w != dir) {
                v[w] += m;
            }
        }
        ++length;
    }
    Integer scale = 1;
    for (const auto& x : v) {
        scale = std::max(scale, ceil(upper(x)));
    }
    for (auto& x : v) {
        x = x / Rational(scale);
    }

    Scenario s;
    s.name = "random";
    s.kind = ScenarioKind::RandomIndependent;
    s.frame = make_frame(std::move(v));
    s.plan.push_back(PlanStep::argmin(steps));
    s.small_by_step = length;
    return s;
}

ParameterFrame random_unit_frame(std::size_t d, std::uint64_t seed)
{
    if (d < 2) {
        throw PreconditionViolation("dimension must be at least 2");
    }
    std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + d);
    const RandomFrameParts parts = random_generators(d, rng);
    std::uniform_int_distribution<int> den(2, 12);
    std::vector<ValueVector> v;
    for (std::size_t i = 0; i < d; ++i) {
        // a/b * g in [1, 2): a ranges over ceil(b/g) .. ceil(2b/g) - 1.
        const ValueVector g = ValueVector::unit(parts.basis, parts.generator[i]);
        for (;;) {
            const int b = den(rng);
            const ValueVector bb = ValueVector::rational(parts.basis, Rational(b));
            Integer lo = floor_ratio(bb, g);
            if (value_less(Rational(lo) * g, bb)) {
                ++lo;
            }
            Integer hi = floor_ratio(Rational(2) * bb, g);
            if (!value_less(Rational(hi) * g, Rational(2) * bb)) {
                --hi;
            }
            if (lo <= hi) {
                std::uniform_int_distribution<long> pick(lo.get_si(), hi.get_si());
                v.push_back(make_rational(Integer(pick(rng)), Integer(b)) * g);
                break;
            }
        }
    }
    return make_frame(std::move(v));
}

std::vector<std::string> list_presets()
{
    return {"shannon-4.18", "rr1", "rr1-2d", "gmr-7.13", "gmr-7.13-3d", "gmr-7.14", "dvr", "random"};
}

Scenario preset(const std::string& name, std::optional<std::size_t> steps, std::uint64_t seed)
{
    const std::size_t episodes = steps.value_or(kDefaultEpisodes);
    if (name == "shannon-4.18") {
        return gen_shannon_418(episodes);
    }
    if (name == "rr1") {
        return gen_notunion_rr1(steps.value_or(2 * kDefaultEpisodes), true);
    }
    if (name == "rr1-2d") {
        return gen_notunion_rr1(steps.value_or(2 * kDefaultEpisodes), false);
    }
    if (name == "gmr-7.13") {
        return gen_713(episodes, false);
    }
    if (name == "gmr-7.13-3d") {
        return gen_713(episodes, true);
    }
    if (name == "gmr-7.14") {
        return gen_714(episodes);
    }
    if (name == "dvr") {
        return gen_dvr(3, steps.value_or(10000));
    }
    if (name == "random") {
        return gen_random_independent(3, seed, steps.value_or(10000));
    }
    throw ConfigError("unknown preset '" + name + "'");
}

} // namespace lqt
