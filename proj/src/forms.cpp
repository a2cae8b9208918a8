#include "lqt/forms.hpp"

#include "lqt/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>

namespace lqt {

MonomialForm::MonomialForm(std::vector<Monomial> support)
    : support_(std::move(support))
{
    if (support_.empty()) {
        throw EmptyGeneratorSet("a form needs at least one monomial");
    }
    for (const auto& m : support_) {
        if (m.dimension() != support_.front().dimension()) {
            throw DimensionMismatch("support monomials of different dimension");
        }
    }
    std::sort(support_.begin(), support_.end());
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
        throw PreconditionViolation("support monomials must be distinct");
    }
}

Exponent form_order(const MonomialForm& f)
{
    Exponent best = std::numeric_limits<Exponent>::max();
    for (const auto& g : f.support()) {
        best = std::min(best, g.total_degree());
    }
    return best;
}

MonomialForm transform_form(const MonomialForm& f, Direction dir)
{
    const Exponent r = form_order(f);
    std::vector<Monomial> out;
    out.reserve(f.support().size());
    for (const auto& g : f.support()) {
        std::vector<Exponent> e = rewrite_monomial(g, dir).exponents();
        e[dir] -= r;
        out.emplace_back(std::move(e));
    }
    return MonomialForm(std::move(out));
}

std::vector<Exponent> ord_trace(const MonomialForm& f, std::span<const Direction> dirs)
{
    std::vector<Exponent> out{form_order(f)};
    MonomialForm cur = f;
    for (auto dir : dirs) {
        cur = transform_form(cur, dir);
        out.push_back(form_order(cur));
    }
    return out;
}

ValueVector monomial_value(const Monomial& m, const ParameterFrame& frame)
{
    if (m.dimension() != frame.dimension()) {
        throw DimensionMismatch("monomial and frame dimensions differ");
    }
    ValueVector v(frame.basis());
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        if (m[i] != 0) {
            v += Rational(Integer(static_cast<unsigned long>(m[i]))) * frame.values[i];
        }
    }
    return v;
}

ValueVector value_of_form(const MonomialForm& f, const ParameterFrame& frame)
{
    std::optional<ValueVector> best;
    for (const auto& g : f.support()) {
        ValueVector v = monomial_value(g, frame);
        if (!best || value_less(v, *best)) {
            best = std::move(v);
        }
    }
    return *best;
}

namespace {

std::vector<Monomial> monomials_up_to(std::size_t d, Exponent max_degree, bool include_unit)
{
    std::vector<Monomial> out;
    for (Exponent k = include_unit ? 0 : 1; k <= max_degree; ++k) {
        const MonomialIdeal power = MonomialIdeal::maximal_power(d, k);
        out.insert(out.end(), power.generators().begin(), power.generators().end());
    }
    return out;
}

std::vector<Direction> missing_directions(std::size_t d, std::span<const Direction> dirs)
{
    std::vector<bool> seen(d, false);
    for (auto dir : dirs) {
        if (dir >= d) {
            throw IndexOutOfRange("direction " + std::to_string(dir) + " in dimension "
                                  + std::to_string(d));
        }
        seen[dir] = true;
    }
    std::vector<Direction> out;
    for (Direction i = 0; i < d; ++i) {
        if (!seen[i]) {
            out.push_back(i);
        }
    }
    return out;
}

// Small fixed-size forms for the exhaustive searches. Exponents start at
// degree <= 3 and at most double per step, so 32 bits are ample for the
// word lengths used here; wider inputs go through MonomialForm.
constexpr std::size_t kMaxDim = 3;
constexpr std::size_t kMaxSupport = 32;

struct SmallForm {
    std::uint32_t size = 0;
    std::array<std::array<std::uint32_t, kMaxDim>, kMaxSupport> e{};
    std::array<std::uint32_t, kMaxSupport> deg{};
    std::uint32_t order = 0;
};

void small_transform(const SmallForm& in, SmallForm& out, std::size_t d, Direction dir)
{
    out.size = in.size;
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t i = 0; i < in.size; ++i) {
        out.e[i] = in.e[i];
        const std::uint32_t nd = in.deg[i] - in.order;
        out.deg[i] = in.deg[i] - in.e[i][dir] + nd;
        out.e[i][dir] = nd;
        best = std::min(best, out.deg[i]);
    }
    (void)d;
    out.order = best;
}

SmallForm to_small(const MonomialForm& f)
{
    SmallForm s;
    if (f.dimension() > kMaxDim || f.support().size() > kMaxSupport) {
        throw PreconditionViolation("form too large for the exhaustive kernel");
    }
    s.size = static_cast<std::uint32_t>(f.support().size());
    s.order = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t i = 0; i < s.size; ++i) {
        const auto& g = f.support()[i];
        std::uint32_t deg = 0;
        for (std::size_t j = 0; j < g.dimension(); ++j) {
            s.e[i][j] = static_cast<std::uint32_t>(g[j]);
            deg += s.e[i][j];
        }
        s.deg[i] = deg;
        s.order = std::min(s.order, deg);
    }
    return s;
}

// Order of f transformed along `dirs`, through the fixed-size kernel.
std::uint32_t small_final_order(SmallForm f, std::size_t d, std::span<const Direction> dirs)
{
    SmallForm next;
    for (auto dir : dirs) {
        small_transform(f, next, d, dir);
        f = next;
    }
    return f.order;
}

// Depth-first search over all words of length <= max_len from form `f`.
// Orders never increase along a word, so once the order has dropped every
// extension drops as well and the subtree is settled. Records a failure for
// every covering word reached without a drop.
void search_words(const SmallForm& f, std::uint32_t initial_order, std::size_t d,
                  std::size_t depth, std::size_t max_len, unsigned mask,
                  std::vector<Direction>& word, std::vector<std::string>& failures)
{
    if (depth == max_len) {
        return;
    }
    SmallForm child;
    for (Direction dir = 0; dir < d; ++dir) {
        small_transform(f, child, d, dir);
        if (child.order > f.order) {
            failures.push_back("order increased along a word");
            continue;
        }
        if (child.order < initial_order) {
            continue;
        }
        const unsigned m = mask | (1u << dir);
        word.push_back(dir);
        if (m == (1u << d) - 1) {
            if (failures.size() < 20) {
                std::string w;
                for (auto x : word) {
                    w += default_names(d)[x];
                }
                failures.push_back("no order drop along covering word " + w);
            }
        } else {
            search_words(child, initial_order, d, depth + 1, max_len, m, word, failures);
        }
        word.pop_back();
    }
}

std::uint64_t covering_words(std::size_t d, std::size_t max_len)
{
    // Words of length <= max_len over d letters that use every letter, by
    // inclusion-exclusion over the set of unused letters.
    std::uint64_t total = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::int64_t count = 0;
        std::int64_t binom = 1;
        for (std::size_t k = 0; k <= d; ++k) {
            std::int64_t pw = 1;
            for (std::size_t i = 0; i < len; ++i) {
                pw *= static_cast<std::int64_t>(d - k);
            }
            count += (k % 2 ? -1 : 1) * binom * pw;
            binom = binom * static_cast<std::int64_t>(d - k) / static_cast<std::int64_t>(k + 1);
        }
        total += static_cast<std::uint64_t>(count);
    }
    return total;
}

} // namespace

OrderDropReport check_theorem_33a(std::size_t d, std::span<const Direction> dirs,
                                   std::size_t samples, std::uint64_t seed,
                                   Exponent exhaustive_degree, Exponent sample_degree)
{
    if (d < 1) {
        throw DimensionMismatch("dimension must be positive");
    }
    OrderDropReport report;
    report.dimension = d;
    report.dirs.assign(dirs.begin(), dirs.end());
    report.missing = missing_directions(d, dirs);
    report.full_coverage = report.missing.empty();

    if (!report.full_coverage) {
        const Direction w = report.missing.front();
        report.witness = MonomialForm({Monomial::variable(d, w)});
        report.witness_trace = ord_trace(*report.witness, dirs);
        report.pass = std::all_of(report.witness_trace.begin(), report.witness_trace.end(),
                                  [](Exponent e) { return e == 1; });
        return report;
    }

    auto record = [&](const MonomialForm& f, Exponent final_order) {
        ++report.forms_checked;
        if (final_order >= form_order(f) && report.non_dropping.size() < 20) {
            report.non_dropping.push_back(f);
        }
    };

    // Degrees at most double per step, so the 32-bit kernel is safe for
    // words of up to 24 letters.
    if (d <= kMaxDim && dirs.size() <= 24) {
        const auto gens = monomials_up_to(d, exhaustive_degree, false);
        if (gens.size() < 31) {
            const std::uint64_t subsets = (std::uint64_t(1) << gens.size()) - 1;
            for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
                std::vector<Monomial> support;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    if (mask >> i & 1) {
                        support.push_back(gens[i]);
                    }
                }
                const SmallForm s = to_small(MonomialForm(support));
                const auto final_order = small_final_order(s, d, dirs);
                ++report.forms_checked;
                if (final_order >= s.order && report.non_dropping.size() < 20) {
                    report.non_dropping.push_back(MonomialForm(std::move(support)));
                }
            }
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> support_size(1, 4);
    std::uniform_int_distribution<Exponent> degree(1, sample_degree);
    std::uniform_int_distribution<std::size_t> axis(0, d - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        std::vector<Monomial> support;
        const std::size_t n = support_size(rng);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Exponent> e(d, 0);
            const Exponent deg = degree(rng);
            for (Exponent j = 0; j < deg; ++j) {
                ++e[axis(rng)];
            }
            Monomial m(std::move(e));
            if (std::find(support.begin(), support.end(), m) == support.end()) {
                support.push_back(std::move(m));
            }
        }
        MonomialForm f(std::move(support));
        record(f, ord_trace(f, dirs).back());
    }
    report.pass = report.non_dropping.empty();
    return report;
}

OrderDropSweep sweep_theorem_33a(std::size_t max_d, Exponent max_degree, std::size_t max_length)
{
    if (max_d > kMaxDim) {
        throw PreconditionViolation("the exhaustive sweep supports dimension <= 3");
    }
    OrderDropSweep sweep;
    for (std::size_t d = 2; d <= max_d; ++d) {
        const auto gens = monomials_up_to(d, max_degree, false);
        if (gens.size() > 24) {
            throw PreconditionViolation("too many monomials for an exhaustive sweep");
        }
        // Covering words: every nonunit form must drop.
        const std::uint64_t subsets = (std::uint64_t(1) << gens.size()) - 1;
        std::vector<Direction> word;
        for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
            std::vector<Monomial> support;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (mask >> i & 1) {
                    support.push_back(gens[i]);
                }
            }
            const SmallForm s = to_small(MonomialForm(std::move(support)));
            const std::size_t before = sweep.failures.size();
            search_words(s, s.order, d, 0, max_length, 0, word, sweep.failures);
            if (sweep.failures.size() > before) {
                sweep.failures.back() += " for form " + std::to_string(mask);
            }
        }
        sweep.covering_pairs += subsets * covering_words(d, max_length);

        // Non-covering words: the missing variable never drops.
        std::vector<Direction> w;
        auto visit = [&](auto&& self, std::size_t len) -> void {
            ++sweep.words;
            const auto missing = missing_directions(d, w);
            if (!missing.empty()) {
                ++sweep.witness_words;
                for (auto m : missing) {
                    const auto trace = ord_trace(MonomialForm({Monomial::variable(d, m)}), w);
                    if (trace.back() != 1) {
                        sweep.failures.push_back("witness form dropped along a non-covering word");
                    }
                }
            }
            if (len == max_length) {
                return;
            }
            for (Direction dir = 0; dir < d; ++dir) {
                w.push_back(dir);
                self(self, len + 1);
                w.pop_back();
            }
        };
        visit(visit, 0);
    }
    return sweep;
}

namespace {

// Column sums of M: the degree in R_n of each original parameter.
std::vector<Integer> column_degrees(const RewriteMatrix& m)
{
    std::vector<Integer> out(m.dimension(), Integer(0));
    for (std::size_t row = 0; row < m.dimension(); ++row) {
        for (std::size_t col = 0; col < m.dimension(); ++col) {
            out[col] += m.at(row, col);
        }
    }
    return out;
}

Integer element_order(const MonomialForm& f, const std::vector<Integer>& degrees)
{
    std::optional<Integer> best;
    for (const auto& g : f.support()) {
        Integer s = 0;
        for (std::size_t i = 0; i < g.dimension(); ++i) {
            s += degrees[i] * Integer(static_cast<unsigned long>(g[i]));
        }
        if (!best || s < *best) {
            best = s;
        }
    }
    return *best;
}

// Laurent monomial with exponents u lies in R_n iff M u >= 0.
bool in_ring(const RewriteMatrix& m, const std::vector<Integer>& u)
{
    for (std::size_t row = 0; row < m.dimension(); ++row) {
        Integer s = 0;
        for (std::size_t col = 0; col < m.dimension(); ++col) {
            s += m.at(row, col) * u[col];
        }
        if (s < 0) {
            return false;
        }
    }
    return true;
}

} // namespace

RatioLimitReport ratio_limit_report(const MonomialForm& f, const MonomialForm& g,
                                    const SequenceState& state0, std::size_t steps,
                                    const Rational& eps, std::size_t max_q)
{
    const std::size_t d = state0.dimension();
    if (f.dimension() != d || g.dimension() != d) {
        throw DimensionMismatch("forms and sequence have different dimensions");
    }
    if (form_order(f) == 0 || form_order(g) == 0) {
        throw RatioUndefined("both forms must be nonunits");
    }
    if (eps <= 0) {
        throw PreconditionViolation("eps must be positive");
    }
    const ParameterFrame& frame = state0.frame();
    RatioLimitReport report{value_of_form(f, frame), value_of_form(g, frame), {}, {}, true, false};
    const ValueVector band = eps * report.value_g;

    // Bracketing data for single-monomial f, g: for each q the integer p with
    // p v(g) <= q v(f) < (p+1) v(g), and the exponent vectors of f^q/g^p and
    // g^(p+1)/f^q.
    struct Bracket {
        Integer p;
        Integer q;
        std::vector<Integer> low;
        std::vector<Integer> high;
    };
    std::vector<Bracket> brackets;
    if (f.support().size() == 1 && g.support().size() == 1) {
        report.bracketing_used = true;
        const Monomial& mf = f.support().front();
        const Monomial& mg = g.support().front();
        for (std::size_t q = 1; q <= max_q; ++q) {
            Bracket b;
            b.q = static_cast<unsigned long>(q);
            b.p = floor_ratio(Rational(b.q) * report.value_f, report.value_g);
            for (std::size_t i = 0; i < d; ++i) {
                const Integer ef(static_cast<unsigned long>(mf[i]));
                const Integer eg(static_cast<unsigned long>(mg[i]));
                b.low.push_back(b.q * ef - b.p * eg);
                b.high.push_back((b.p + 1) * eg - b.q * ef);
            }
            brackets.push_back(std::move(b));
        }
    }

    SequenceState state = state0;
    RewriteMatrix m(d);
    for (std::size_t n = 0;; ++n) {
        RatioRow row;
        row.n = static_cast<unsigned long>(n);
        const auto degrees = column_degrees(m);
        row.ord_f = element_order(f, degrees);
        row.ord_g = element_order(g, degrees);
        row.ratio = make_rational(row.ord_f, row.ord_g);
        const ValueVector diff = row.ratio * report.value_g - report.value_f;
        row.within_eps = value_less(diff, band) && value_less(-band, diff);
        for (const auto& b : brackets) {
            if (in_ring(m, b.low) && in_ring(m, b.high)) {
                ++row.brackets_applicable;
                const bool ok = Rational(b.p, b.q) <= row.ratio && row.ratio < Rational(b.p + 1, b.q);
                if (!ok) {
                    ++row.brackets_failed;
                    report.bracketing_ok = false;
                }
            }
        }
        report.rows.push_back(std::move(row));
        if (n == steps) {
            break;
        }
        Direction dir;
        std::tie(state, dir) = step_argmin(std::move(state));
        m.apply(dir);
    }

    for (std::size_t i = report.rows.size(); i-- > 0;) {
        if (!report.rows[i].within_eps) {
            if (i + 1 < report.rows.size()) {
                report.n0 = report.rows[i + 1].n;
            }
            break;
        }
        if (i == 0) {
            report.n0 = Integer(0);
        }
    }
    return report;
}

ComparabilityResult comparability_index(const Monomial& p, const Monomial& q,
                                        const SequenceState& state0, std::size_t max_steps)
{
    const std::size_t d = state0.dimension();
    if (p.dimension() != d || q.dimension() != d) {
        throw DimensionMismatch("monomials and sequence have different dimensions");
    }
    if (p == q) {
        throw PreconditionViolation("p and q must differ");
    }
    const ValueVector vp = monomial_value(p, state0.frame());
    const ValueVector vq = monomial_value(q, state0.frame());

    auto finish = [&](std::size_t t, bool p_unit) {
        ComparabilityResult r;
        r.t = t;
        // p a unit of the transformed pair means q/p lies in m_t.
        r.side = p_unit ? ComparabilitySide::QoverP : ComparabilitySide::PoverQ;
        r.consistent = p_unit ? value_less(vp, vq) : value_less(vq, vp);
        return r;
    };

    std::vector<Exponent> a = p.exponents();
    std::vector<Exponent> b = q.exponents();
    SequenceState state = state0;
    for (std::size_t t = 0;; ++t) {
        const bool pu = std::all_of(a.begin(), a.end(), [](Exponent e) { return e == 0; });
        const bool qu = std::all_of(b.begin(), b.end(), [](Exponent e) { return e == 0; });
        if (pu || qu) {
            return finish(t, pu);
        }
        if (t == max_steps) {
            throw NotTerminated("no generator became a unit within " + std::to_string(max_steps)
                                + " steps; some direction may be starving");
        }
        Direction dir;
        std::tie(state, dir) = step_argmin(std::move(state));
        const Exponent da = total_degree(Monomial(a));
        const Exponent db = total_degree(Monomial(b));
        const Exponent r = std::min(da, db);
        a[dir] = da - r;
        b[dir] = db - r;
    }
}

} // namespace lqt
