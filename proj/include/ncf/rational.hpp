#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ncf {

using BigInt = mpz_class;

// Exact rational number, kept canonical at all times: gcd(|num|, den) == 1,
// den >= 1, zero is 0/1. Immutable value type; all arithmetic is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: integers embed naturally
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    const BigInt& num() const { return v_.get_num(); }
    const BigInt& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }

    double to_double() const { return v_.get_d(); }
    // "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    Rational abs() const;
    Rational reciprocal() const;  // throws std::domain_error on zero
    // Largest integer <= value.
    BigInt floor() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_));
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c <=> 0;
    }

private:
    mpq_class v_;
};

// Parses "p/q", an integer, or a plain decimal literal ("0.25"); decimal
// literals are exact (power-of-ten denominators). Throws
// std::invalid_argument on malformed text and std::domain_error on a zero
// denominator.
Rational rational_parse(std::string_view text);
std::optional<Rational> rational_try_parse(std::string_view text);

// base^exp as an exact rational (exp may be negative; base != 0 then).
Rational rational_pow(const Rational& base, long exp);

inline BigInt bigint_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace ncf
