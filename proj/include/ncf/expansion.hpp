#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncf/ball.hpp"
#include "ncf/rational.hpp"
#include "ncf/real_expr.hpp"

namespace ncf {

// The family parameter N >= 1 of the expansion x = N/(a_1 + N/(a_2 + ...)).
struct NcfParams {
    long n_param = 1;
};

void validate(const NcfParams& params);  // throws std::invalid_argument

// Finite digit string a_1..a_k, every digit >= N.
struct DigitSequence {
    NcfParams params;
    std::vector<BigInt> digits;

    std::size_t size() const { return digits.size(); }
    bool empty() const { return digits.empty(); }
};

DigitSequence make_digits(NcfParams params, std::vector<long> digits);

// Numerator/denominator recurrence table, indexed from -1:
//   p_{-1}=1, p_0=0, q_{-1}=0, q_0=1,
//   p_n = a_n p_{n-1} + N p_{n-2},  q_n = a_n q_{n-1} + N q_{n-2}.
class ConvergentTable {
public:
    static ConvergentTable build(const DigitSequence& d);

    const NcfParams& params() const { return params_; }
    // Largest valid index (the digit count).
    long depth() const { return static_cast<long>(p_.size()) - 2; }
    const BigInt& p(long n) const { return p_.at(static_cast<std::size_t>(n + 1)); }
    const BigInt& q(long n) const { return q_.at(static_cast<std::size_t>(n + 1)); }

    Rational value(long n) const { return Rational(p(n), q(n)); }
    Rational mediant(long n) const { return Rational(p(n) + p(n - 1), q(n) + q(n - 1)); }
    // p_{n-1} q_n - p_n q_{n-1}, which must equal (-N)^n.
    BigInt determinant(long n) const { return p(n - 1) * q(n) - p(n) * q(n - 1); }

private:
    NcfParams params_;
    std::vector<BigInt> p_;
    std::vector<BigInt> q_;
};

// T_N(x) = N/x - floor(N/x), T_N(0) = 0. Requires 0 <= x <= 1; exact for
// rationals. The Ball overload throws AmbiguousEnclosureError when the
// enclosure cannot certify the branch.
Rational gauss_map(const Rational& x, NcfParams params);
Ball gauss_map(const Ball& x, NcfParams params);

// eta(x) = floor(N/x); nullopt encodes eta(0) = infinity.
std::optional<BigInt> index_map(const Rational& x, NcfParams params);
std::optional<BigInt> index_map(const Ball& x, NcfParams params);

struct ExpandResult {
    DigitSequence digits;
    // The orbit hit 0 exactly (always eventually true for rational input).
    bool terminated = false;
    // Digit extraction stopped early: the enclosure (after any precision
    // escalation) straddles a branch boundary.
    bool precision_exhausted = false;
};

// Digit extraction a_n = eta(T_N^{n-1} x). Requires 0 <= x <= 1 (x = 1 gives
// the one-digit expansion [N]).
ExpandResult expand(const Rational& x, NcfParams params, std::size_t max_depth);
// Ball inputs walk the orbit in exact rational interval arithmetic, so the
// only digit loss is the input radius itself.
ExpandResult expand(const Ball& x, NcfParams params, std::size_t max_depth);

struct PrecisionPolicy {
    mpfr_prec_t initial = Ball::kDefaultPrecision;
    mpfr_prec_t cap = 1 << 14;
};

// Re-evaluates the expression at doubled working precision while digits
// remain uncertifiable; precision_exhausted is set only once the cap fails.
ExpandResult expand(const RealExpr& x, NcfParams params, std::size_t max_depth,
                    PrecisionPolicy policy = {});

// (p_n + t p_{n-1}) / (q_n + t q_{n-1}) with t = tail in [0, 1); with tail 0
// this is the value [a_1, ..., a_n]_N. Throws on an empty digit list.
Rational eval_digits(const DigitSequence& d, const Rational& tail = Rational(0));

ConvergentTable convergents(const DigitSequence& d);

// |x - p_n/q_n| for 1 <= n <= depth; exact for rational x.
Rational approximation_error(const Rational& x, const ConvergentTable& table, long n);
Ball approximation_error(const Ball& x, const ConvergentTable& table, long n);

}  // namespace ncf
