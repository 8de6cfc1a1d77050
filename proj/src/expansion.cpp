#include "ncf/expansion.hpp"

#include <stdexcept>
#include <string>

#include "ncf/errors.hpp"

namespace ncf {

namespace {

void require_unit_range(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) {
        throw std::invalid_argument("input " + x.str() + " outside [0, 1]");
    }
}

void require_digit_alphabet(const DigitSequence& d) {
    const BigInt n_min(d.params.n_param);
    for (const BigInt& a : d.digits) {
        if (a < n_min) {
            throw std::invalid_argument("digit " + a.get_str() + " below N = " +
                                        n_min.get_str());
        }
    }
}

}  // namespace

void validate(const NcfParams& params) {
    if (params.n_param < 1) {
        throw std::invalid_argument("N must be a positive integer, got " +
                                    std::to_string(params.n_param));
    }
}

DigitSequence make_digits(NcfParams params, std::vector<long> digits) {
    validate(params);
    DigitSequence d{params, {}};
    d.digits.reserve(digits.size());
    for (long a : digits) d.digits.emplace_back(a);
    require_digit_alphabet(d);
    return d;
}

ConvergentTable ConvergentTable::build(const DigitSequence& d) {
    validate(d.params);
    require_digit_alphabet(d);
    const BigInt n_val(d.params.n_param);

    ConvergentTable t;
    t.params_ = d.params;
    t.p_.reserve(d.size() + 2);
    t.q_.reserve(d.size() + 2);
    t.p_ = {BigInt(1), BigInt(0)};  // p_{-1}, p_0
    t.q_ = {BigInt(0), BigInt(1)};  // q_{-1}, q_0
    for (const BigInt& a : d.digits) {
        const std::size_t k = t.p_.size();
        t.p_.push_back(a * t.p_[k - 1] + n_val * t.p_[k - 2]);
        t.q_.push_back(a * t.q_[k - 1] + n_val * t.q_[k - 2]);
    }
    return t;
}

Rational gauss_map(const Rational& x, NcfParams params) {
    validate(params);
    require_unit_range(x);
    if (x.is_zero()) return Rational(0);
    const Rational ratio = Rational(params.n_param) / x;
    return ratio - Rational(ratio.floor());
}

std::optional<BigInt> index_map(const Rational& x, NcfParams params) {
    validate(params);
    require_unit_range(x);
    if (x.is_zero()) return std::nullopt;
    return (Rational(params.n_param) / x).floor();
}

std::optional<BigInt> index_map(const Ball& x, NcfParams params) {
    validate(params);
    if (x.is_exact_zero()) return std::nullopt;
    const Rational lo = x.lower();
    const Rational hi = x.upper();
    if (hi.sign() < 0 || lo > Rational(1)) {
        throw std::invalid_argument("ball outside [0, 1]");
    }
    if (lo.sign() <= 0) {
        throw AmbiguousEnclosureError("enclosure touches 0: index unbounded");
    }
    const Rational n_val(params.n_param);
    const BigInt a_hi = (n_val / hi).floor();
    const BigInt a_lo = (n_val / lo).floor();
    if (a_hi != a_lo) {
        throw AmbiguousEnclosureError("enclosure straddles a branch boundary");
    }
    return a_hi;
}

Ball gauss_map(const Ball& x, NcfParams params) {
    validate(params);
    if (x.is_exact_zero()) return Ball(Rational(0), x.precision());
    const auto a = index_map(x, params);  // throws when ambiguous
    const Rational n_val(params.n_param);
    const Rational r(*a);
    // T is decreasing on the branch: image of [lo, hi] is [N/hi - a, N/lo - a].
    const Rational img_lo = n_val / x.upper() - r;
    const Rational img_hi = n_val / x.lower() - r;
    return Ball::from_interval(img_lo, img_hi, x.precision());
}

ExpandResult expand(const Rational& x, NcfParams params, std::size_t max_depth) {
    validate(params);
    require_unit_range(x);
    ExpandResult res;
    res.digits.params = params;
    const Rational n_val(params.n_param);

    Rational v = x;
    while (res.digits.size() < max_depth) {
        if (v.is_zero()) {
            res.terminated = true;
            return res;
        }
        const Rational ratio = n_val / v;
        const BigInt a = ratio.floor();
        res.digits.digits.push_back(a);
        v = ratio - Rational(a);
    }
    res.terminated = v.is_zero();
    return res;
}

ExpandResult expand(const Ball& x, NcfParams params, std::size_t max_depth) {
    validate(params);
    ExpandResult res;
    res.digits.params = params;
    const Rational n_val(params.n_param);
    const Rational one(1);

    Rational lo = x.lower();
    Rational hi = x.upper();
    if (hi.sign() < 0 || lo > one) throw std::invalid_argument("ball outside [0, 1]");
    if (lo.sign() < 0) lo = Rational(0);
    if (hi > one) hi = one;

    while (res.digits.size() < max_depth) {
        if (lo.is_zero() && hi.is_zero()) {
            res.terminated = true;
            return res;
        }
        if (lo.sign() <= 0) {
            // The enclosure touches 0: cannot certify the next digit.
            res.precision_exhausted = true;
            return res;
        }
        const Rational r_hi = n_val / hi;
        const Rational r_lo = n_val / lo;
        const BigInt a = r_hi.floor();
        if (a != r_lo.floor()) {
            res.precision_exhausted = true;
            return res;
        }
        res.digits.digits.push_back(a);
        const Rational a_rat{BigInt(a)};
        lo = r_hi - a_rat;
        hi = r_lo - a_rat;
    }
    return res;
}

ExpandResult expand(const RealExpr& x, NcfParams params, std::size_t max_depth,
                    PrecisionPolicy policy) {
    if (const auto exact = x.rational_value()) {
        return expand(*exact, params, max_depth);
    }
    ExpandResult res;
    for (mpfr_prec_t prec = policy.initial;; prec *= 2) {
        res = expand(x.eval(prec), params, max_depth);
        if (!res.precision_exhausted || prec >= policy.cap) return res;
    }
}

Rational eval_digits(const DigitSequence& d, const Rational& tail) {
    if (d.empty()) throw std::invalid_argument("cannot evaluate an empty digit list");
    if (tail.sign() < 0 || tail >= Rational(1)) {
        throw std::invalid_argument("tail must lie in [0, 1)");
    }
    const ConvergentTable t = ConvergentTable::build(d);
    const long n = t.depth();
    const Rational num = Rational(t.p(n)) + tail * Rational(t.p(n - 1));
    const Rational den = Rational(t.q(n)) + tail * Rational(t.q(n - 1));
    return num / den;
}

ConvergentTable convergents(const DigitSequence& d) { return ConvergentTable::build(d); }

namespace {

void check_table_index(const ConvergentTable& table, long n) {
    if (n < 1 || n > table.depth()) {
        throw std::out_of_range("convergent index " + std::to_string(n) +
                                " outside [1, " + std::to_string(table.depth()) + "]");
    }
}

}  // namespace

Rational approximation_error(const Rational& x, const ConvergentTable& table, long n) {
    check_table_index(table, n);
    return (x - table.value(n)).abs();
}

Ball approximation_error(const Ball& x, const ConvergentTable& table, long n) {
    check_table_index(table, n);
    return x.sub(table.value(n)).abs();
}

}  // namespace ncf
