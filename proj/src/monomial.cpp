#include "lqt/monomial.hpp"

#include "lqt/error.hpp"

#include <algorithm>
#include <limits>

namespace lqt {

Exponent checked_add(Exponent a, Exponent b)
{
    Exponent r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw ExponentOverflow("exponent sum exceeds 64 bits");
    }
    return r;
}

Exponent checked_mul(Exponent a, Exponent b)
{
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw ExponentOverflow("exponent product exceeds 64 bits");
    }
    return r;
}

Monomial Monomial::variable(std::size_t d, Direction i, Exponent power)
{
    std::vector<Exponent> e(d, 0);
    e.at(i) = power;
    return Monomial(std::move(e));
}

Exponent Monomial::total_degree() const
{
    Exponent s = 0;
    for (auto e : exponents_) {
        s = checked_add(s, e);
    }
    return s;
}

bool Monomial::is_unit() const
{
    return std::all_of(exponents_.begin(), exponents_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const
{
    if (dimension() != other.dimension()) {
        throw DimensionMismatch("monomials of different dimension");
    }
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (exponents_[i] > other.exponents_[i]) {
            return false;
        }
    }
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    if (a.dimension() != b.dimension()) {
        throw DimensionMismatch("monomials of different dimension");
    }
    std::vector<Exponent> e(a.dimension());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = checked_add(a[i], b[i]);
    }
    return Monomial(std::move(e));
}

Exponent total_degree(const Monomial& m)
{
    return m.total_degree();
}

Monomial rewrite_monomial(const Monomial& m, Direction dir)
{
    if (dir >= m.dimension()) {
        throw IndexOutOfRange("direction " + std::to_string(dir) + " in dimension "
                              + std::to_string(m.dimension()));
    }
    std::vector<Exponent> e = m.exponents();
    e[dir] = m.total_degree();
    return Monomial(std::move(e));
}

MonomialIdeal minimalize(std::vector<Monomial> gens)
{
    if (gens.empty()) {
        throw EmptyGeneratorSet("a monomial ideal needs at least one generator");
    }
    const std::size_t d = gens.front().dimension();
    for (const auto& g : gens) {
        if (g.dimension() != d) {
            throw DimensionMismatch("generators of different dimension");
        }
    }
    // Degree order puts every proper divisor before its multiples.
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        const auto da = a.total_degree();
        const auto db = b.total_degree();
        return da != db ? da < db : a < b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> kept;
    for (auto& g : gens) {
        const bool redundant = std::any_of(kept.begin(), kept.end(),
                                           [&](const Monomial& k) { return k.divides(g); });
        if (!redundant) {
            kept.push_back(std::move(g));
        }
    }
    std::sort(kept.begin(), kept.end());
    return MonomialIdeal(d, std::move(kept));
}

Exponent MonomialIdeal::order() const
{
    Exponent best = std::numeric_limits<Exponent>::max();
    for (const auto& g : generators_) {
        best = std::min(best, g.total_degree());
    }
    return best;
}

bool MonomialIdeal::contains(const Monomial& m) const
{
    return std::any_of(generators_.begin(), generators_.end(),
                       [&](const Monomial& g) { return g.divides(m); });
}

MonomialIdeal MonomialIdeal::unit(std::size_t d)
{
    return minimalize({Monomial::one(d)});
}

MonomialIdeal MonomialIdeal::maximal_power(std::size_t d, Exponent k)
{
    // All exponent vectors of total degree exactly k.
    std::vector<Monomial> gens;
    std::vector<Exponent> e(d, 0);
    auto fill = [&](auto&& self, std::size_t i, Exponent left) -> void {
        if (i + 1 == d) {
            e[i] = left;
            gens.emplace_back(e);
            return;
        }
        for (Exponent a = 0; a <= left; ++a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    fill(fill, 0, k);
    return minimalize(std::move(gens));
}

Exponent ideal_order(const MonomialIdeal& ideal)
{
    return ideal.order();
}

MonomialIdeal transform_ideal(const MonomialIdeal& ideal, Direction dir)
{
    const Exponent r = ideal.order();
    std::vector<Monomial> gens;
    gens.reserve(ideal.generators().size());
    for (const auto& g : ideal.generators()) {
        std::vector<Exponent> e = rewrite_monomial(g, dir).exponents();
        e[dir] -= r;
        gens.emplace_back(std::move(e));
    }
    return minimalize(std::move(gens));
}

MonomialIdeal extend_ideal(const MonomialIdeal& ideal, std::span<const Direction> dirs)
{
    std::vector<Monomial> gens = ideal.generators();
    for (auto dir : dirs) {
        for (auto& g : gens) {
            g = rewrite_monomial(g, dir);
        }
    }
    return minimalize(std::move(gens));
}

bool is_principal(const MonomialIdeal& ideal)
{
    return ideal.is_principal();
}

RewriteMatrix::RewriteMatrix(std::size_t d)
    : dimension_(d), entries_(d * d, Integer(0))
{
    for (std::size_t i = 0; i < d; ++i) {
        entries_[i * d + i] = 1;
    }
}

void RewriteMatrix::apply(Direction dir, const Integer& repeat)
{
    if (dir >= dimension_) {
        throw IndexOutOfRange("direction " + std::to_string(dir));
    }
    // E_dir^k: row dir gains k times the sum of the other rows.
    for (std::size_t col = 0; col < dimension_; ++col) {
        Integer others = 0;
        for (std::size_t row = 0; row < dimension_; ++row) {
            if (row != dir) {
                others += at(row, col);
            }
        }
        entries_[dir * dimension_ + col] += repeat * others;
    }
}

Monomial RewriteMatrix::rewrite(const Monomial& m) const
{
    if (m.dimension() != dimension_) {
        throw DimensionMismatch("monomial dimension does not match rewrite matrix");
    }
    std::vector<Exponent> e(dimension_);
    for (std::size_t row = 0; row < dimension_; ++row) {
        Integer s = 0;
        for (std::size_t col = 0; col < dimension_; ++col) {
            s += at(row, col) * Integer(static_cast<unsigned long>(m[col]));
        }
        if (!s.fits_ulong_p()) {
            throw ExponentOverflow("rewritten exponent does not fit in 64 bits");
        }
        e[row] = s.get_ui();
    }
    return Monomial(std::move(e));
}

Integer RewriteMatrix::determinant() const
{
    // Bareiss fraction-free elimination.
    const std::size_t n = dimension_;
    std::vector<Integer> a = entries_;
    auto A = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * n + c]; };
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && A(p, k) == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(A(k, c), A(p, c));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
            }
        }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

RewriteMatrix rewrite_matrix(std::size_t d, std::span<const Direction> dirs)
{
    RewriteMatrix m(d);
    for (auto dir : dirs) {
        m.apply(dir);
    }
    return m;
}

std::vector<std::string> default_names(std::size_t d)
{
    static const char* small[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) {
        names.push_back(d <= 4 ? std::string(small[i]) : "x" + std::to_string(i));
    }
    return names;
}

std::string format_monomial(const Monomial& m, std::span<const std::string> names)
{
    std::string out;
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += i < names.size() ? names[i] : "v" + std::to_string(i);
        if (m[i] > 1) {
            out += "^" + std::to_string(m[i]);
        }
    }
    return out.empty() ? "1" : out;
}

std::string format_ideal(const MonomialIdeal& ideal, std::span<const std::string> names)
{
    std::string out = "(";
    for (std::size_t i = 0; i < ideal.generators().size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_monomial(ideal.generators()[i], names);
    }
    return out + ")";
}

} // namespace lqt
