#include "ncf/measures.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncf {

namespace {

void require_unit_interval(double a, double b) {
    if (!(0.0 <= a && a <= b && b <= 1.0)) {
        throw std::invalid_argument("interval [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "] not within [0, 1]");
    }
}

void require_digit(long i, NcfParams params) {
    if (i < params.n_param) {
        throw std::invalid_argument("digit " + std::to_string(i) + " below N = " +
                                    std::to_string(params.n_param));
    }
}

}  // namespace

GaussLikeMeasure GaussLikeMeasure::make(NcfParams params) {
    validate(params);
    const double n = static_cast<double>(params.n_param);
    return GaussLikeMeasure{params, 1.0 / std::log1p(1.0 / n)};
}

double GaussLikeMeasure::measure(double a, double b) const {
    require_unit_interval(a, b);
    const double n = static_cast<double>(params.n_param);
    return k_norm * std::log((b + n) / (a + n));
}

double GaussLikeMeasure::density(double x) const {
    return k_norm / (x + static_cast<double>(params.n_param));
}

double GaussLikeMeasure::inverse_cdf(double u) const {
    // k log((x+N)/N) = u  =>  x = N ((N+1)/N)^u - N
    const double n = static_cast<double>(params.n_param);
    return n * std::expm1(u * std::log1p(1.0 / n));
}

double g_measure(double a, double b, NcfParams params) {
    return GaussLikeMeasure::make(params).measure(a, b);
}

double rho_density(double x, NcfParams params) {
    require_unit_interval(x, x);
    return GaussLikeMeasure::make(params).density(x);
}

double g_measure_preimage(double a, double b, NcfParams params, int explicit_terms) {
    require_unit_interval(a, b);
    const GaussLikeMeasure g = GaussLikeMeasure::make(params);
    const long n = params.n_param;

    // Branch i contributes G_N([N/(b+i), N/(a+i)]) =
    // k (log((a+i+1)/(a+i)) - log((b+i+1)/(b+i))); Kahan-summed.
    double sum = 0.0;
    double carry = 0.0;
    const long last = n + explicit_terms - 1;
    for (long i = n; i <= last; ++i) {
        const double ai = a + static_cast<double>(i);
        const double bi = b + static_cast<double>(i);
        const double term = std::log1p(1.0 / ai) - std::log1p(1.0 / bi);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    // Exact telescoped remainder: k log((b+I+1)/(a+I+1)).
    const double edge = static_cast<double>(last + 1);
    const double tail = std::log1p((b - a) / (a + edge));
    return g.k_norm * (sum + tail);
}

double v_weight(long i, double x, NcfParams params) {
    validate(params);
    require_digit(i, params);
    const double n = static_cast<double>(params.n_param);
    const double d = static_cast<double>(i);
    return (x + n) / ((x + d) * (x + d + 1.0));
}

double v_weight_partial_fraction(long i, double x, NcfParams params) {
    validate(params);
    require_digit(i, params);
    const double n = static_cast<double>(params.n_param);
    const double d = static_cast<double>(i);
    return (d + 1.0 - n) / (x + d + 1.0) + (n - d) / (x + d);
}

double v_weight_partial_sum(long upto_i, double x, NcfParams params) {
    validate(params);
    require_digit(upto_i, params);
    const double n = static_cast<double>(params.n_param);
    return 1.0 - (x + n) / (x + static_cast<double>(upto_i) + 1.0);
}

Rational v_weight_exact(const BigInt& i, const Rational& x, NcfParams params) {
    validate(params);
    if (i < BigInt(params.n_param)) throw std::invalid_argument("digit below N");
    const Rational n(params.n_param);
    const Rational d{i};
    return (x + n) / ((x + d) * (x + d + Rational(1)));
}

BrodenState broden_state_from_history(const DigitSequence& history) {
    BrodenState st{history.params, 0.0, history};
    if (!history.empty()) st.s = broden_s_exact(history).to_double();
    return st;
}

Rational broden_s_exact(const DigitSequence& history) {
    validate(history.params);
    if (history.empty()) return Rational(0);
    const ConvergentTable t = ConvergentTable::build(history);
    const long n = t.depth();
    return Rational(history.params.n_param) * Rational(t.q(n - 1), t.q(n));
}

double bbl_cdf(double x, const BrodenState& state) {
    validate(state.params);
    if (!(0.0 <= x && x <= 1.0)) throw std::invalid_argument("x outside [0, 1]");
    const double n = static_cast<double>(state.params.n_param);
    return (state.s + n) * x / (state.s * x + n);
}

Rational bbl_cdf_exact(const Rational& x, const Rational& s, NcfParams params) {
    validate(params);
    const Rational n(params.n_param);
    return (s + n) * x / (s * x + n);
}

double digit_conditional(long i, const BrodenState& state) {
    return v_weight(i, state.s, state.params);
}

MarkovStep markov_step(const BrodenState& state, RandomSource& rng) {
    validate(state.params);
    const double n = static_cast<double>(state.params.n_param);
    const double s = state.s;
    const double u = rng.uniform01();

    // Smallest i with cumulative probability 1 - (s+N)/(s+i+1) > u, i.e.
    // i > (s+N)/(1-u) - s - 1; the tail (s+N)/(s+I+1) falls below the
    // remaining deviate exactly at that index.
    const double z = (s + n) / (1.0 - u) - s - 1.0;
    std::int64_t digit = static_cast<std::int64_t>(std::floor(z)) + 1;
    if (digit < state.params.n_param) digit = state.params.n_param;

    BrodenState next{state.params, n / (s + static_cast<double>(digit)), std::nullopt};
    return MarkovStep{digit, next};
}

double stationary_digit_law(long i, NcfParams params) {
    validate(params);
    require_digit(i, params);
    const double d = static_cast<double>(i);
    const double k = GaussLikeMeasure::make(params).k_norm;
    return k * std::log((d + 1.0) * (d + 1.0) / (d * (d + 2.0)));
}

}  // namespace ncf
