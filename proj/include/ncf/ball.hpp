#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "ncf/rational.hpp"

namespace ncf {

// Midpoint-radius enclosure of a real number: the true value lies in
// [mid - rad, mid + rad]. The midpoint is an MPFR float at the working
// precision; the radius is a short MPFR float maintained as a sound upper
// bound through every operation (directed rounding throughout).
class Ball {
public:
    static constexpr mpfr_prec_t kDefaultPrecision = 256;
    static constexpr mpfr_prec_t kRadiusPrecision = 64;

    Ball();  // exact zero at default precision
    explicit Ball(const Rational& r, mpfr_prec_t prec = kDefaultPrecision);
    static Ball from_interval(const Rational& lo, const Rational& hi,
                              mpfr_prec_t prec = kDefaultPrecision);

    Ball(const Ball& other);
    Ball(Ball&& other) noexcept;
    Ball& operator=(const Ball& other);
    Ball& operator=(Ball&& other) noexcept;
    ~Ball();

    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
    bool is_exact() const { return mpfr_zero_p(rad_) != 0; }
    bool is_exact_zero() const { return is_exact() && mpfr_zero_p(mid_); }

    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double radius_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // Exact dyadic values: lower() <= true value <= upper().
    Rational mid_rational() const;
    Rational radius_rational() const;
    Rational lower() const;
    Rational upper() const;

    // Decimal strings for the wire format; value_string round-trips the
    // midpoint to full precision.
    std::string value_string() const;
    std::string radius_string() const;

    Ball operator-() const;
    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    // Divisor enclosure must exclude zero (std::domain_error otherwise).
    friend Ball operator/(const Ball& a, const Ball& b);
    // Argument enclosure must not extend below zero.
    friend Ball ball_sqrt(const Ball& x);

    // Exact-endpoint operations with rationals (no extra rounding beyond the
    // interval re-centering).
    Ball add(const Rational& r) const;
    Ball sub(const Rational& r) const;
    Ball mul(const Rational& r) const;
    Ball abs() const;

    bool contains(const Rational& r) const;
    // -1, 0, +1 when the order against r is certain (0 only for an exact
    // ball equal to r); nullopt when the enclosure straddles r.
    std::optional<int> compare(const Rational& r) const;

private:
    void init(mpfr_prec_t prec);

    mpfr_t mid_;
    mpfr_t rad_;
};

// floor(x), valid for every real in the enclosure; nullopt when the
// enclosure straddles an integer (AmbiguousFloor).
std::optional<BigInt> real_floor_safe(const Ball& x);

}  // namespace ncf
