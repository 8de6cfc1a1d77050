#include "ncf/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ncf {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!is_integer_literal(s)) {
        throw std::invalid_argument("malformed integer literal: '" + std::string(s) + "'");
    }
    BigInt r;
    if (r.set_str(std::string(s), 10) != 0) {
        throw std::invalid_argument("malformed integer literal: '" + std::string(s) + "'");
    }
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational Rational::abs() const {
    return sign() < 0 ? -*this : *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(den(), num());
}

BigInt Rational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational rational_parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(trim(s.substr(0, slash)));
        const BigInt den = parse_integer(trim(s.substr(slash + 1)));
        return Rational(num, den);  // throws on den == 0
    }

    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view head = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool negative = false;
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
            negative = head[0] == '-';
            head.remove_prefix(1);
        }
        if (head.empty() && frac.empty()) {
            throw std::invalid_argument("malformed decimal literal: '" + std::string(s) + "'");
        }
        for (std::string_view part : {head, frac}) {
            for (char c : part) {
                if (!std::isdigit(static_cast<unsigned char>(c))) {
                    throw std::invalid_argument("malformed decimal literal: '" + std::string(s) + "'");
                }
            }
        }
        const BigInt int_part = head.empty() ? BigInt(0) : parse_integer(head);
        BigInt num = int_part;
        BigInt den(1);
        if (!frac.empty()) {
            const BigInt frac_part = parse_integer(frac);
            den = bigint_pow(BigInt(10), frac.size());
            num = int_part * den + frac_part;
        }
        if (negative) num = -num;
        return Rational(num, den);
    }

    return Rational(parse_integer(s));
}

std::optional<Rational> rational_try_parse(std::string_view text) {
    try {
        return rational_parse(text);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    const bool invert = exp < 0;
    if (invert && base.is_zero()) throw std::domain_error("0 raised to a negative power");
    const auto e = static_cast<unsigned long>(invert ? -exp : exp);
    const Rational r(bigint_pow(base.num(), e), bigint_pow(base.den(), e));
    return invert ? r.reciprocal() : r;
}

}  // namespace ncf
