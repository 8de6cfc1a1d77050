#pragma once

#include <cstdint>
#include <vector>

#include "ncf/expansion.hpp"
#include "ncf/random_source.hpp"

namespace ncf {

// A point of the natural-extension square I^2; exact coordinates.
struct NatExtPoint {
    Rational x;
    Rational y;

    friend bool operator==(const NatExtPoint&, const NatExtPoint&) = default;
};

// Same, in doubles, for simulation.
struct NatExtPointD {
    double x;
    double y;
};

// u_{N,i}(y) = N/(y+i), the branch-i right inverse of T_N (i >= N).
Rational inverse_branch(const Rational& y, const BigInt& i, NcfParams params);
double inverse_branch(double y, long i, NcfParams params);

// T-bar(x, y) = (T_N(x), N/(y + eta(x))); requires x != 0.
NatExtPoint natext_forward(const NatExtPoint& p, NcfParams params);
// T-bar^{-1}(x, y) = (N/(x + eta(y)), T_N(y)); requires y != 0.
NatExtPoint natext_inverse(const NatExtPoint& p, NcfParams params);

struct NatExtStepD {
    NatExtPointD point;
    std::int64_t digit;  // eta of the pre-step x coordinate
};
NatExtStepD natext_forward(const NatExtPointD& p, NcfParams params);

// Extended incomplete quotient a-bar_l(x, y): for l >= 1 the l-th digit of
// x; for l <= 0 the (1-l)-th digit of y. Throws std::domain_error when the
// orbit hits a zero coordinate before reaching index l.
BigInt extended_digit(const NatExtPoint& p, long l, NcfParams params);

// The invariant measure of T-bar: density N k_N/(xy+N)^2 (normalized so the
// square has mass 1 and both marginals are G_N).
struct ExtendedMeasure {
    NcfParams params;
    double k_norm;

    static ExtendedMeasure make(NcfParams params);

    // Measure of [x1,x2] x [y1,y2] via the primitive F(x,y) = k log((xy+N)/N).
    double rect(double x1, double x2, double y1, double y2) const;
    double mass() const { return rect(0.0, 1.0, 0.0, 1.0); }

    // Measure of T-bar^{-1}([x1,x2] x [y1,y2]): the preimage is a union of
    // branch rectangles, finite when y1 > 0 and completed by an exact
    // telescoped tail when y1 == 0.
    double preimage_rect(double x1, double x2, double y1, double y2) const;

    // Inverse-CDF sampling: x from the marginal G_N, then y from the
    // x-section (N+x)y/(xy+N).
    NatExtPointD sample(RandomSource& rng) const;
};

struct Theorem33Row {
    double x;
    double exact_conditional;  // ratio of extended rectangle measures
    double limit_form;         // (N+a)x/(ax+N)
    double mc_estimate;
};

struct Theorem33Report {
    double a;  // value of the finite backward history [h_1, h_2, ...]_N
    std::vector<Theorem33Row> rows;
    double max_dev_exact_vs_limit = 0.0;
    double max_dev_mc_vs_exact = 0.0;
};

// Conditional law of the x-coordinate given a finite backward history
// (digits of y): compares the exact cylinder-conditioned measure, the
// theorem's limit form, and a Monte-Carlo estimate over `samples` draws.
Theorem33Report verify_theorem_3_3(const DigitSequence& backward_digits,
                                   const std::vector<double>& grid, long samples,
                                   RandomSource& rng);

}  // namespace ncf
