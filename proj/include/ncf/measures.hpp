#pragma once

#include <cstdint>
#include <optional>

#include "ncf/expansion.hpp"
#include "ncf/random_source.hpp"

namespace ncf {

// The invariant probability measure of T_N: density k_N/(x+N) with
// k_N = 1/log((N+1)/N).
struct GaussLikeMeasure {
    NcfParams params;
    double k_norm;

    static GaussLikeMeasure make(NcfParams params);

    double measure(double a, double b) const;  // of [a, b] in [0, 1]
    double density(double x) const;
    double cdf(double x) const { return measure(0.0, x); }
    double inverse_cdf(double u) const;  // u in [0, 1]
};

// G_N([a, b]) = k_N log((b+N)/(a+N)); requires 0 <= a <= b <= 1.
double g_measure(double a, double b, NcfParams params);

// rho_N(x) = k_N/(x+N).
double rho_density(double x, NcfParams params);

// G_N(T^{-1}([a, b])) evaluated as the branch series
// sum_i G_N([N/(b+i), N/(a+i)]) with the telescoped remainder added in
// closed form; agreement with g_measure(a, b) is the invariance check.
double g_measure_preimage(double a, double b, NcfParams params, int explicit_terms = 512);

// V_{N,i}(x) = (x+N)/((x+i)(x+i+1)) for i >= N.
double v_weight(long i, double x, NcfParams params);
// Partial-fraction form (i+1-N)/(x+i+1) + (N-i)/(x+i) of the same value.
double v_weight_partial_fraction(long i, double x, NcfParams params);
// sum_{i=N..I} V_{N,i}(x) = 1 - (x+N)/(x+I+1), exact telescoping.
double v_weight_partial_sum(long upto_i, double x, NcfParams params);
// Exact-rational route for rational points (identity checks).
Rational v_weight_exact(const BigInt& i, const Rational& x, NcfParams params);

// State of the reversed-convergent chain s_n = N q_{n-1}/q_n = [a_n,...,a_1].
struct BrodenState {
    NcfParams params;
    double s = 0.0;  // in [0, 1]; s = 1 is reachable (single digit N)
    std::optional<DigitSequence> digit_history;
};

BrodenState broden_state_from_history(const DigitSequence& history);
Rational broden_s_exact(const DigitSequence& history);

// Broden-Borel-Levy conditional law: lambda(T^n < x | a_1..a_n) =
// (s+N)x/(sx+N).
double bbl_cdf(double x, const BrodenState& state);
Rational bbl_cdf_exact(const Rational& x, const Rational& s, NcfParams params);

// lambda(a_{n+1} = i | a_1..a_n) = V_{N,i}(s_n).
double digit_conditional(long i, const BrodenState& state);

struct MarkovStep {
    std::int64_t digit;
    BrodenState next;
};

// Samples the next digit with probabilities V_{N,i}(s) by closed-form
// inversion of the telescoped partial sums (no truncation of the alphabet);
// the next state is s' = N/(s + digit).
MarkovStep markov_step(const BrodenState& state, RandomSource& rng);

// G_N(a_1 = i) = k_N log((i+1)^2 / (i(i+2))).
double stationary_digit_law(long i, NcfParams params);

}  // namespace ncf
