#include "lqt/rational.hpp"

#include "lqt/error.hpp"

#include <cctype>

namespace lqt {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw ParseError("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) {
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        }
    }
    Integer n(std::string(text.substr(i)), 10);
    return negative ? Integer(-n) : n;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    return make_rational(num, den);
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, unsigned digits)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    const Integer num = abs(q.get_num());
    Integer scaled = num * scale;
    mpz_tdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    Integer ipart, fpart;
    mpz_tdiv_qr(ipart.get_mpz_t(), fpart.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());
    std::string out = (q < 0 ? "-" : "") + ipart.get_str();
    if (digits > 0) {
        std::string frac = fpart.get_str();
        out += "." + std::string(digits - frac.size(), '0') + frac;
    }
    return out;
}

std::size_t bit_length(const Integer& n)
{
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

Integer ceil(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer floor(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace lqt
