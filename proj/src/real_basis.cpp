#include "lqt/real_basis.hpp"

#include "lqt/error.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace lqt {

namespace {

// Enclosures by precision, computed once. std::map nodes never move, so the
// references handed out stay valid.
class EnclosureCache {
public:
    template <typename Make>
    const DyadicEnclosure& get(unsigned bits, Make&& make) const
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find(bits); it != cache_.end()) {
                return it->second;
            }
        }
        DyadicEnclosure e = make(bits);
        std::unique_lock lock(mutex_);
        return cache_.emplace(bits, std::move(e)).first->second;
    }

private:
    mutable std::shared_mutex mutex_;
    mutable std::map<unsigned, DyadicEnclosure> cache_;
};

class OneOracle final : public IntervalOracle {
public:
    const DyadicEnclosure& enclose(unsigned bits) const override
    {
        return cache_.get(bits, [](unsigned b) {
            Integer v = 1;
            v <<= b;
            return DyadicEnclosure{v, v, b};
        });
    }
    std::optional<Rational> exact() const override { return Rational(1); }
    std::string label() const override { return "one"; }

private:
    EnclosureCache cache_;
};

class SqrtOracle final : public IntervalOracle {
public:
    explicit SqrtOracle(unsigned long n) : n_(n)
    {
        Integer root;
        mpz_sqrt(root.get_mpz_t(), Integer(n).get_mpz_t());
        if (root * root == n) {
            exact_ = Rational(root);
        }
    }

    const DyadicEnclosure& enclose(unsigned bits) const override
    {
        return cache_.get(bits, [this](unsigned b) {
            // floor(sqrt(n * 4^b)) <= sqrt(n) * 2^b < that + 1
            Integer scaled = n_;
            scaled <<= 2 * b;
            Integer lo;
            mpz_sqrt(lo.get_mpz_t(), scaled.get_mpz_t());
            Integer hi = lo * lo == scaled ? lo : Integer(lo + 1);
            return DyadicEnclosure{std::move(lo), std::move(hi), b};
        });
    }

    std::optional<Rational> exact() const override { return exact_; }
    std::string label() const override { return "sqrt(" + std::to_string(n_) + ")"; }

private:
    unsigned long n_;
    std::optional<Rational> exact_;
    EnclosureCache cache_;
};

} // namespace

std::shared_ptr<const IntervalOracle> make_one_oracle()
{
    static const auto one = std::make_shared<const OneOracle>();
    return one;
}

std::shared_ptr<const IntervalOracle> make_sqrt_oracle(unsigned long n)
{
    if (n == 0) {
        throw ParseError("sqrt generator must be positive");
    }
    return std::make_shared<const SqrtOracle>(n);
}

std::vector<unsigned long> first_primes(std::size_t count)
{
    std::vector<unsigned long> primes;
    for (unsigned long c = 2; primes.size() < count; ++c) {
        bool prime = true;
        for (auto p : primes) {
            if (p * p > c) {
                break;
            }
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) {
            primes.push_back(c);
        }
    }
    return primes;
}

RealBasis::RealBasis(std::vector<std::shared_ptr<const IntervalOracle>> generators,
                     PrecisionPolicy policy)
    : generators_(std::move(generators)), policy_(policy)
{
    if (generators_.empty()) {
        throw ParseError("basis needs at least one generator");
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (!generators_[i]) {
            throw ParseError("null basis generator");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (generators_[i]->label() == generators_[j]->label()) {
                throw ParseError("duplicate basis generator " + generators_[i]->label());
            }
        }
        exact_.push_back(generators_[i]->exact());
        if (!exact_.back()) {
            all_rational_ = false;
        } else if (*exact_.back() == 1 && !one_index_) {
            one_index_ = i;
        }
    }
}

BasisPtr RealBasis::default_basis(std::size_t size)
{
    // Shared per size, so scenarios built independently compare as the same basis.
    static std::mutex mutex;
    static std::map<std::size_t, BasisPtr> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(size); it != cache.end()) {
        return it->second;
    }
    std::vector<std::shared_ptr<const IntervalOracle>> gens{make_one_oracle()};
    if (size > 1) {
        for (auto p : first_primes(size - 1)) {
            gens.push_back(make_sqrt_oracle(p));
        }
    }
    auto basis = std::make_shared<const RealBasis>(std::move(gens));
    cache.emplace(size, basis);
    return basis;
}

BasisPtr RealBasis::rational()
{
    return default_basis(1);
}

std::vector<std::string> RealBasis::labels() const
{
    std::vector<std::string> out;
    out.reserve(generators_.size());
    for (const auto& g : generators_) {
        out.push_back(g->label());
    }
    return out;
}

bool RealBasis::same_as(const RealBasis& other) const
{
    if (this == &other) {
        return true;
    }
    if (size() != other.size()) {
        return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (generators_[i] != other.generators_[i]
            && generators_[i]->label() != other.generators_[i]->label()) {
            return false;
        }
    }
    return true;
}

} // namespace lqt
