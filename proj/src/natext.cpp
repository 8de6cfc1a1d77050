#include "ncf/natext.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncf/cylinders.hpp"
#include "ncf/measures.hpp"

namespace ncf {

Rational inverse_branch(const Rational& y, const BigInt& i, NcfParams params) {
    validate(params);
    if (i < BigInt(params.n_param)) throw std::invalid_argument("branch index below N");
    return Rational(params.n_param) / (y + Rational(i));
}

double inverse_branch(double y, long i, NcfParams params) {
    validate(params);
    if (i < params.n_param) throw std::invalid_argument("branch index below N");
    return static_cast<double>(params.n_param) / (y + static_cast<double>(i));
}

NatExtPoint natext_forward(const NatExtPoint& p, NcfParams params) {
    const auto digit = index_map(p.x, params);
    if (!digit) throw std::domain_error("natural extension undefined at x = 0");
    return NatExtPoint{gauss_map(p.x, params), inverse_branch(p.y, *digit, params)};
}

NatExtPoint natext_inverse(const NatExtPoint& p, NcfParams params) {
    const auto digit = index_map(p.y, params);
    if (!digit) throw std::domain_error("natural extension inverse undefined at y = 0");
    return NatExtPoint{inverse_branch(p.x, *digit, params), gauss_map(p.y, params)};
}

NatExtStepD natext_forward(const NatExtPointD& p, NcfParams params) {
    validate(params);
    if (p.x <= 0.0) throw std::domain_error("natural extension undefined at x = 0");
    const double n = static_cast<double>(params.n_param);
    const double ratio = n / p.x;
    const double digit = std::floor(ratio);
    return NatExtStepD{{ratio - digit, n / (p.y + digit)},
                       static_cast<std::int64_t>(digit)};
}

BigInt extended_digit(const NatExtPoint& p, long l, NcfParams params) {
    validate(params);
    if (l >= 1) {
        Rational x = p.x;
        for (long k = 1; k < l; ++k) {
            if (x.is_zero()) throw std::domain_error("orbit hit x = 0 before index " +
                                                     std::to_string(l));
            x = gauss_map(x, params);
        }
        const auto digit = index_map(x, params);
        if (!digit) throw std::domain_error("orbit hit x = 0 at index " + std::to_string(l));
        return *digit;
    }
    // a-bar_0 = y_1, a-bar_{-n} = y_{n+1}: the (1-l)-th digit of y.
    Rational y = p.y;
    for (long k = 0; k < -l; ++k) {
        if (y.is_zero()) throw std::domain_error("orbit hit y = 0 before index " +
                                                 std::to_string(l));
        y = gauss_map(y, params);
    }
    const auto digit = index_map(y, params);
    if (!digit) throw std::domain_error("orbit hit y = 0 at index " + std::to_string(l));
    return *digit;
}

ExtendedMeasure ExtendedMeasure::make(NcfParams params) {
    validate(params);
    const double n = static_cast<double>(params.n_param);
    return ExtendedMeasure{params, 1.0 / std::log1p(1.0 / n)};
}

double ExtendedMeasure::rect(double x1, double x2, double y1, double y2) const {
    if (!(0.0 <= x1 && x1 <= x2 && x2 <= 1.0 && 0.0 <= y1 && y1 <= y2 && y2 <= 1.0)) {
        throw std::invalid_argument("rectangle not within the unit square");
    }
    const double n = static_cast<double>(params.n_param);
    // Inclusion-exclusion of F(x, y) = k log((xy+N)/N); log1p keeps the
    // corners accurate near zero.
    const auto f = [n](double x, double y) { return std::log1p(x * y / n); };
    return k_norm * (f(x2, y2) - f(x2, y1) - f(x1, y2) + f(x1, y1));
}

double ExtendedMeasure::preimage_rect(double x1, double x2, double y1, double y2) const {
    if (!(0.0 <= x1 && x1 <= x2 && x2 <= 1.0 && 0.0 <= y1 && y1 <= y2 && y2 <= 1.0)) {
        throw std::invalid_argument("rectangle not within the unit square");
    }
    if (x1 == x2 || y1 == y2) return 0.0;
    const double n = static_cast<double>(params.n_param);
    // On branch i the preimage is
    //   [N/(x2+i), N/(x1+i)] x ([N/y2 - i, N/y1 - i] intersect [0, 1]);
    // the y-window is nonempty only for finitely many i unless y1 == 0.
    const long i_min =
        std::max<long>(params.n_param, static_cast<long>(std::ceil(n / y2 - 1.0)));
    double total = 0.0;

    if (y1 > 0.0) {
        const long i_max = static_cast<long>(std::floor(n / y1));
        for (long i = i_min; i <= i_max; ++i) {
            const double d = static_cast<double>(i);
            const double ylo = std::max(0.0, n / y2 - d);
            const double yhi = std::min(1.0, n / y1 - d);
            if (yhi <= ylo) continue;
            total += rect(n / (x2 + d), n / (x1 + d), ylo, yhi);
        }
        return total;
    }

    // y1 == 0: branches beyond the y2-window cover the full [0, 1] slab in y;
    // their x-strips telescope exactly against the marginal G_N.
    long i = i_min;
    for (; ; ++i) {
        const double d = static_cast<double>(i);
        const double ylo = std::max(0.0, n / y2 - d);
        if (ylo == 0.0) break;
        total += rect(n / (x2 + d), n / (x1 + d), ylo, 1.0);
    }
    // Remaining full slabs telescope exactly:
    // sum_{j >= i} G_N([N/(x2+j), N/(x1+j)]) = k log((x2+i)/(x1+i)).
    const double d = static_cast<double>(i);
    total += k_norm * std::log1p((x2 - x1) / (x1 + d));
    return total;
}

NatExtPointD ExtendedMeasure::sample(RandomSource& rng) const {
    const double n = static_cast<double>(params.n_param);
    const double log_ratio = std::log1p(1.0 / n);
    const double x = n * std::expm1(rng.uniform01() * log_ratio);
    // Section CDF in y: (N+x)y/(xy+N); inverse y = uN/(N + x(1-u)).
    const double u = rng.uniform01();
    const double y = u * n / (n + x * (1.0 - u));
    return NatExtPointD{x, y};
}

Theorem33Report verify_theorem_3_3(const DigitSequence& backward_digits,
                                   const std::vector<double>& grid, long samples,
                                   RandomSource& rng) {
    validate(backward_digits.params);
    if (backward_digits.empty()) {
        throw std::invalid_argument("a backward history of length >= 1 is required");
    }
    const ExtendedMeasure m = ExtendedMeasure::make(backward_digits.params);
    const double n = static_cast<double>(backward_digits.params.n_param);

    // The history digits are the y-digits (a-bar_0, a-bar_{-1}, ...); y lies
    // in their cylinder and the conditioning value is a = [h_1, h_2, ...]_N.
    const Cylinder cyl = cylinder(backward_digits);
    const double c_lo = cyl.bounds->lo.to_double();
    const double c_hi = cyl.bounds->hi.to_double();
    const double a = eval_digits(backward_digits).to_double();

    Theorem33Report report;
    report.a = a;

    const double denom = m.rect(0.0, 1.0, c_lo, c_hi);

    // Monte Carlo: y from G_N restricted to the cylinder, then x from the
    // y-section; count x <= t per grid point.
    const GaussLikeMeasure g = GaussLikeMeasure::make(backward_digits.params);
    std::vector<long> counts(grid.size(), 0);
    const double u_lo = g.cdf(c_lo);
    const double u_hi = g.cdf(c_hi);
    for (long s = 0; s < samples; ++s) {
        const double y = g.inverse_cdf(u_lo + rng.uniform01() * (u_hi - u_lo));
        const double u = rng.uniform01();
        const double x = u * n / (n + y * (1.0 - u));
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (x <= grid[j]) ++counts[j];
        }
    }

    for (std::size_t j = 0; j < grid.size(); ++j) {
        Theorem33Row row;
        row.x = grid[j];
        row.exact_conditional = m.rect(0.0, grid[j], c_lo, c_hi) / denom;
        row.limit_form = (n + a) * grid[j] / (a * grid[j] + n);
        row.mc_estimate =
            samples > 0 ? static_cast<double>(counts[j]) / static_cast<double>(samples) : 0.0;
        report.max_dev_exact_vs_limit = std::max(
            report.max_dev_exact_vs_limit, std::abs(row.exact_conditional - row.limit_form));
        if (samples > 0) {
            report.max_dev_mc_vs_exact = std::max(
                report.max_dev_mc_vs_exact, std::abs(row.mc_estimate - row.exact_conditional));
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ncf
