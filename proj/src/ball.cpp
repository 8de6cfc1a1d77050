#include "ncf/ball.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncf {

namespace {

// Adds a sound upper bound for the rounding error of `result` (ternary flag
// `t` from an MPFR round-to-nearest operation) onto `rad`, rounding upward.
void add_round_error(mpfr_t rad, const mpfr_t result, int t) {
    if (t == 0) return;
    mpfr_exp_t e = mpfr_zero_p(result) ? mpfr_get_emin() + mpfr_get_prec(result)
                                       : mpfr_get_exp(result);
    mpfr_t ulp;
    mpfr_init2(ulp, 32);
    mpfr_set_ui_2exp(ulp, 1, e - mpfr_get_prec(result), MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

Rational rational_from_mpfr(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    BigInt mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    if (e >= 0) {
        BigInt shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(shifted);
    }
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    return Rational(mant, den);
}

}  // namespace

void Ball::init(mpfr_prec_t prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadiusPrecision);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball() { init(kDefaultPrecision); }

Ball::Ball(const Rational& r, mpfr_prec_t prec) {
    init(prec);
    const int t = mpfr_set_q(mid_, r.raw().get_mpq_t(), MPFR_RNDN);
    add_round_error(rad_, mid_, t);
}

Ball Ball::from_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    Ball b;
    mpfr_set_prec(b.mid_, prec);
    const Rational mid = (lo + hi) / Rational(2);
    const Rational half = (hi - lo) / Rational(2);
    const int t = mpfr_set_q(b.mid_, mid.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(b.rad_, half.raw().get_mpq_t(), MPFR_RNDU);
    add_round_error(b.rad_, b.mid_, t);
    return b;
}

Ball::Ball(const Ball& other) {
    init(other.precision());
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept {
    mpfr_init2(mid_, 2);
    mpfr_init2(rad_, 2);
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
}

Ball& Ball::operator=(const Ball& other) {
    if (this != &other) {
        mpfr_set_prec(mid_, other.precision());
        mpfr_set(mid_, other.mid_, MPFR_RNDN);
        mpfr_set(rad_, other.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& other) noexcept {
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
    return *this;
}

Ball::~Ball() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

Rational Ball::mid_rational() const { return rational_from_mpfr(mid_); }
Rational Ball::radius_rational() const { return rational_from_mpfr(rad_); }
Rational Ball::lower() const { return mid_rational() - radius_rational(); }
Rational Ball::upper() const { return mid_rational() + radius_rational(); }

std::string Ball::value_string() const {
    const int digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 3;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, mid_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Ball::radius_string() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.6Re", rad_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Ball Ball::operator-() const {
    Ball r(*this);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);  // exact
    return r;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r;
    mpfr_set_prec(r.mid_, std::max(a.precision(), b.precision()));
    const int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    add_round_error(r.rad_, r.mid_, t);
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r;
    mpfr_set_prec(r.mid_, std::max(a.precision(), b.precision()));
    const int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    add_round_error(r.rad_, r.mid_, t);
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r;
    mpfr_set_prec(r.mid_, std::max(a.precision(), b.precision()));
    const int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);

    // |xy - am*bm| <= |am|*br + |bm|*ar + ar*br
    mpfr_t am, bm, term;
    mpfr_init2(am, Ball::kRadiusPrecision);
    mpfr_init2(bm, Ball::kRadiusPrecision);
    mpfr_init2(term, Ball::kRadiusPrecision);
    mpfr_abs(am, a.mid_, MPFR_RNDU);
    mpfr_abs(bm, b.mid_, MPFR_RNDU);

    mpfr_mul(term, am, b.rad_, MPFR_RNDU);
    mpfr_set(r.rad_, term, MPFR_RNDU);
    mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
    mpfr_mul(term, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
    add_round_error(r.rad_, r.mid_, t);

    mpfr_clear(am);
    mpfr_clear(bm);
    mpfr_clear(term);
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    if (b.lower().sign() * b.upper().sign() <= 0) {
        throw std::domain_error("division by an enclosure containing zero");
    }
    Ball r;
    mpfr_set_prec(r.mid_, std::max(a.precision(), b.precision()));
    const int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);

    // |x/y - am/bm| <= (ar + |am/bm| * br) / (|bm| - br)
    mpfr_t bm_lo, quot, num, den;
    mpfr_init2(bm_lo, Ball::kRadiusPrecision);
    mpfr_init2(quot, Ball::kRadiusPrecision);
    mpfr_init2(num, Ball::kRadiusPrecision);
    mpfr_init2(den, Ball::kRadiusPrecision);

    mpfr_abs(bm_lo, b.mid_, MPFR_RNDD);
    mpfr_abs(quot, r.mid_, MPFR_RNDU);
    mpfr_mul(num, quot, b.rad_, MPFR_RNDU);
    mpfr_add(num, num, a.rad_, MPFR_RNDU);
    mpfr_sub(den, bm_lo, b.rad_, MPFR_RNDD);
    if (mpfr_sgn(den) <= 0) {
        mpfr_clear(bm_lo);
        mpfr_clear(quot);
        mpfr_clear(num);
        mpfr_clear(den);
        throw std::domain_error("division by an enclosure containing zero");
    }
    mpfr_div(r.rad_, num, den, MPFR_RNDU);
    add_round_error(r.rad_, r.mid_, t);

    mpfr_clear(bm_lo);
    mpfr_clear(quot);
    mpfr_clear(num);
    mpfr_clear(den);
    return r;
}

Ball ball_sqrt(const Ball& x) {
    const Rational lo = x.lower();
    if (lo.sign() < 0) throw std::domain_error("sqrt of an enclosure extending below zero");
    Ball r;
    mpfr_set_prec(r.mid_, x.precision());
    const int t = mpfr_sqrt(r.mid_, x.mid_, MPFR_RNDN);

    mpfr_t tmp;
    mpfr_init2(tmp, Ball::kRadiusPrecision);
    if (lo.sign() > 0) {
        // |sqrt(v) - sqrt(m)| <= r / (2 sqrt(m - r))
        mpfr_sub(tmp, x.mid_, x.rad_, MPFR_RNDD);
        mpfr_sqrt(tmp, tmp, MPFR_RNDD);
        mpfr_mul_ui(tmp, tmp, 2, MPFR_RNDD);
        mpfr_div(r.rad_, x.rad_, tmp, MPFR_RNDU);
    } else {
        // Enclosure touches zero: the image is within [0, sqrt(m + r)].
        mpfr_add(tmp, x.mid_, x.rad_, MPFR_RNDU);
        mpfr_sqrt(r.rad_, tmp, MPFR_RNDU);
    }
    add_round_error(r.rad_, r.mid_, t);
    mpfr_clear(tmp);
    return r;
}

Ball Ball::add(const Rational& r) const {
    return Ball::from_interval(lower() + r, upper() + r, precision());
}

Ball Ball::sub(const Rational& r) const {
    return Ball::from_interval(lower() - r, upper() - r, precision());
}

Ball Ball::mul(const Rational& r) const {
    const Rational a = lower() * r;
    const Rational b = upper() * r;
    return r.sign() >= 0 ? Ball::from_interval(a, b, precision())
                         : Ball::from_interval(b, a, precision());
}

Ball Ball::abs() const {
    const Rational lo = lower();
    const Rational hi = upper();
    if (lo.sign() >= 0) return *this;
    if (hi.sign() <= 0) return -*this;
    return Ball::from_interval(Rational(0), std::max(-lo, hi), precision());
}

bool Ball::contains(const Rational& r) const {
    return lower() <= r && r <= upper();
}

std::optional<int> Ball::compare(const Rational& r) const {
    const Rational lo = lower();
    const Rational hi = upper();
    if (lo > r) return 1;
    if (hi < r) return -1;
    if (lo == r && hi == r) return 0;
    return std::nullopt;
}

std::optional<BigInt> real_floor_safe(const Ball& x) {
    const BigInt f_lo = x.lower().floor();
    const BigInt f_hi = x.upper().floor();
    if (f_lo != f_hi) return std::nullopt;
    return f_lo;
}

}  // namespace ncf
