#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncf/expansion.hpp"
#include "ncf/interval.hpp"

namespace ncf {

// Fundamental interval of a digit string: the open interval (lo, hi) whose
// irrationals share that digit prefix. One endpoint is p_n/q_n, the other
// the mediant (p_n+p_{n-1})/(q_n+q_{n-1}); which is which depends on the
// parity of n. The empty digit string denotes the whole of (0, 1).
struct Cylinder {
    DigitSequence digits;
    std::optional<RationalInterval> bounds;  // nullopt for the n = 0 cylinder

    bool whole_interval() const { return !bounds.has_value(); }
    Rational width() const { return bounds ? bounds->width() : Rational(1); }
};

Cylinder cylinder(const DigitSequence& d);

// Lebesgue measure N^n / (q_n (q_n + q_{n-1})), exact; equals the endpoint
// difference of cylinder(d).
Rational cylinder_measure(const DigitSequence& d);

// Open-interval membership; exact rational endpoints are excluded.
bool cylinder_contains(const Cylinder& c, const Rational& x);
// nullopt when the enclosure straddles an endpoint.
std::optional<bool> cylinder_contains(const Cylinder& c, const Ball& x);

// Approximation coefficient Theta_N(x, n) = (q_n^2 / N^n) |x - p_n/q_n|,
// where p_n/q_n comes from the digit-string recurrence (not reduced).
Rational theta(const Rational& x, const DigitSequence& d, long n);
Ball theta(const Ball& x, const DigitSequence& d, long n);
// Equivalent orbit form T^n(x) q_n / (q_n + T^n(x) q_{n-1}); used as an
// independent route in tests.
Ball theta_via_orbit(const Ball& x, const DigitSequence& d, long n);

enum class LegendreOutcome {
    Convergent,         // the inequality holds; p/q is the n-th convergent
    NotConvergent,      // the inequality fails
    ParityUnreachable,  // no representation with the required parity exists
};

struct LegendreCertificate {
    LegendreOutcome outcome = LegendreOutcome::NotConvergent;
    // The digit representation examined (required parity), and its length.
    std::vector<BigInt> word;
    std::size_t n = 0;
    BigInt q_n;
    BigInt q_n_minus_1;
    Rational bound;             // q_n / (q_n + q_{n-1})
    double theta_mid = 0.0;     // midpoint of the Theta enclosure
    double theta_radius = 0.0;

    bool accepted() const { return outcome == LegendreOutcome::Convergent; }
};

// Legendre-type criterion: p/q (irreducible, in (0,1)) is the n-th
// convergent of x iff Theta_N(x, n) < q_n / (q_n + q_{n-1}), with the length
// n of the representation of p/q chosen even when p/q < x and odd otherwise.
// Every rational has exactly two digit representations (the greedy one and
// its sibling with trailing digit N), one of each parity; the matching one
// is used. Throws AmbiguousEnclosureError when x's enclosure cannot decide
// a comparison.
LegendreCertificate legendre_test(const Rational& pq, const Ball& x, NcfParams params);

}  // namespace ncf
