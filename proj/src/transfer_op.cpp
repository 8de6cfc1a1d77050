#include "ncf/transfer_op.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ncf/errors.hpp"
#include "ncf/special_functions.hpp"

namespace ncf {

GridFunction::GridFunction(std::size_t grid_size, std::vector<double> values)
    : grid_size_(grid_size), values_(std::move(values)) {
    if (grid_size_ < 2) throw std::invalid_argument("grid_size must be >= 2");
    if (values_.size() != grid_size_ + 1) {
        throw std::invalid_argument("expected " + std::to_string(grid_size_ + 1) +
                                    " node values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite node value");
    }
}

GridFunction GridFunction::constant(std::size_t grid_size, double c) {
    return GridFunction(grid_size, std::vector<double>(grid_size + 1, c));
}

GridFunction GridFunction::sample(std::size_t grid_size,
                                  const std::function<double(double)>& f) {
    std::vector<double> values(grid_size + 1);
    for (std::size_t j = 0; j <= grid_size; ++j) {
        values[j] = f(static_cast<double>(j) / static_cast<double>(grid_size));
    }
    return GridFunction(grid_size, std::move(values));
}

double GridFunction::operator()(double x) const {
    if (x <= 0.0) return values_.front();
    if (x >= 1.0) return values_.back();
    const double scaled = x * static_cast<double>(grid_size_);
    std::size_t j = static_cast<std::size_t>(scaled);
    if (j >= grid_size_) j = grid_size_ - 1;
    const double frac = scaled - static_cast<double>(j);
    return values_[j] + frac * (values_[j + 1] - values_[j]);
}

double GridFunction::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::integral() const {
    double acc = 0.5 * (values_.front() + values_.back());
    for (std::size_t j = 1; j < grid_size_; ++j) acc += values_[j];
    return acc * step();
}

double GridFunction::l1_distance(const GridFunction& other) const {
    if (other.grid_size_ != grid_size_) throw std::invalid_argument("grid size mismatch");
    double acc = 0.5 * (std::abs(values_.front() - other.values_.front()) +
                        std::abs(values_.back() - other.values_.back()));
    for (std::size_t j = 1; j < grid_size_; ++j) {
        acc += std::abs(values_[j] - other.values_[j]);
    }
    return acc * step();
}

double GridFunction::node_variation() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_size_; ++j) acc += std::abs(values_[j + 1] - values_[j]);
    return acc;
}

double GridFunction::slope_seminorm() const {
    double m = 0.0;
    for (std::size_t j = 0; j < grid_size_; ++j) {
        m = std::max(m, std::abs(values_[j + 1] - values_[j]));
    }
    return m / step();
}

bool GridFunction::is_monotone(int direction) const {
    for (std::size_t j = 0; j < grid_size_; ++j) {
        const double d = values_[j + 1] - values_[j];
        if (direction >= 0 ? d < 0.0 : d > 0.0) return false;
    }
    return true;
}

void validate(const OperatorConfig& cfg) {
    validate(cfg.params);
    if (cfg.grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
    if (!(cfg.series_cutoff_tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
}

namespace {

void require_matching_grid(const GridFunction& f, const OperatorConfig& cfg) {
    if (f.grid_size() != cfg.grid_size) {
        throw std::invalid_argument("function grid does not match operator config");
    }
}

// First index I such that every preimage N/(x+i), i > I, lies inside the
// first grid cell, where the piecewise-linear input is a single line.
long tail_start(double x, double n, double h, long n_param) {
    const long cell = static_cast<long>(std::ceil(n / h - x));
    return std::max<long>(n_param, cell);
}

void check_budget(double budget, const OperatorConfig& cfg) {
    if (budget > cfg.series_cutoff_tol) {
        throw std::runtime_error("certified series error " + std::to_string(budget) +
                                 " exceeds the configured tolerance");
    }
}

}  // namespace

OperatorResult apply_U(const GridFunction& f, const OperatorConfig& cfg) {
    validate(cfg);
    require_matching_grid(f, cfg);
    const double n = static_cast<double>(cfg.params.n_param);
    const double h = f.step();
    const double f0 = f.node(0);
    const double c0 = (f.node(1) - f0) / h;
    const double sup = f.sup_abs();

    std::vector<double> out(cfg.grid_size + 1);
    double budget = 0.0;
    for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
        const double x = f.node_x(j);
        const long last = tail_start(x, n, h, cfg.params.n_param);
        double acc = 0.0;
        for (long i = cfg.params.n_param; i <= last; ++i) {
            const double xi = x + static_cast<double>(i);
            acc += (x + n) / (xi * (xi + 1.0)) * f(n / xi);
        }
        const double y = x + static_cast<double>(last) + 1.0;
        const double s2 = tail_sum_square(y);
        const double tail = f0 * (x + n) / y + c0 * n * (x + n) * (s2 - 1.0 / y);
        out[j] = acc + tail;
        const double node_budget = kSpecialFunctionRelError * std::abs(tail) +
                                   DBL_EPSILON * static_cast<double>(last + 2) * sup;
        budget = std::max(budget, node_budget);
    }
    check_budget(budget, cfg);
    return OperatorResult{GridFunction(cfg.grid_size, std::move(out)), budget};
}

OperatorResult apply_K(const GridFunction& f, const OperatorConfig& cfg) {
    validate(cfg);
    require_matching_grid(f, cfg);
    const double n = static_cast<double>(cfg.params.n_param);
    const double h = f.step();
    const double f0 = f.node(0);
    const double c0 = (f.node(1) - f0) / h;
    const double sup = f.sup_abs();

    std::vector<double> out(cfg.grid_size + 1);
    double budget = 0.0;
    for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
        const double x = f.node_x(j);
        const long last = tail_start(x, n, h, cfg.params.n_param);
        double acc = 0.0;
        for (long i = cfg.params.n_param; i <= last; ++i) {
            const double xi = x + static_cast<double>(i);
            acc += n / (xi * xi) * f(n / xi);
        }
        const double y = x + static_cast<double>(last) + 1.0;
        const double tail = n * f0 * tail_sum_square(y) + c0 * n * n * tail_sum_cube(y);
        out[j] = acc + tail;
        const double node_budget = kSpecialFunctionRelError * std::abs(tail) +
                                   DBL_EPSILON * static_cast<double>(last + 2) * sup;
        budget = std::max(budget, node_budget);
    }
    check_budget(budget, cfg);
    return OperatorResult{GridFunction(cfg.grid_size, std::move(out)), budget};
}

OperatorResult apply_S(const GridFunction& f, const DensityPair& mu,
                       const OperatorConfig& cfg) {
    validate(cfg);
    require_matching_grid(f, cfg);
    require_matching_grid(mu.h, cfg);
    if (mu.params.n_param != cfg.params.n_param) {
        throw std::invalid_argument("density and operator parameters disagree");
    }
    for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
        if (!(mu.h.node(j) > 0.0)) {
            throw std::domain_error("density vanishes on a grid node");
        }
    }
    const double n = static_cast<double>(cfg.params.n_param);
    const double h_step = f.step();
    const double f0 = f.node(0);
    const double cf = (f.node(1) - f0) / h_step;
    const double h0 = mu.h.node(0);
    const double ch = (mu.h.node(1) - h0) / h_step;
    const double sup = f.sup_abs() * mu.h.sup_abs();

    std::vector<double> out(cfg.grid_size + 1);
    double budget = 0.0;
    for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
        const double x = f.node_x(j);
        const double hx = mu.h.node(j);
        const long last = tail_start(x, n, h_step, cfg.params.n_param);
        double acc = 0.0;
        for (long i = cfg.params.n_param; i <= last; ++i) {
            const double xi = x + static_cast<double>(i);
            const double u = n / xi;
            acc += mu.h(u) / (xi * xi) * f(u);
        }
        const double y = x + static_cast<double>(last) + 1.0;
        // On the first cell f*h is the quadratic h0 f0 + (h0 cf + f0 ch) u
        // + ch cf u^2, so the tail closes over S2, S3, S4.
        const double tail = h0 * f0 * tail_sum_square(y) +
                            (h0 * cf + f0 * ch) * n * tail_sum_cube(y) +
                            ch * cf * n * n * tail_sum_quartic(y);
        out[j] = (acc + tail) * n / hx;
        const double node_budget = (kSpecialFunctionRelError * std::abs(tail) +
                                    DBL_EPSILON * static_cast<double>(last + 2) * sup) *
                                   n / hx;
        budget = std::max(budget, node_budget);
    }
    check_budget(budget, cfg);
    return OperatorResult{GridFunction(cfg.grid_size, std::move(out)), budget};
}

PowerIterationResult invariant_density_power_iteration(const OperatorConfig& cfg,
                                                       int max_iters, double tol) {
    validate(cfg);
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");

    GridFunction f = GridFunction::constant(cfg.grid_size, 1.0);
    for (int it = 1; it <= max_iters; ++it) {
        GridFunction g = apply_K(f, cfg).f;
        const double mass = g.integral();
        std::vector<double> values = g.values();
        for (double& v : values) v /= mass;
        GridFunction next(cfg.grid_size, std::move(values));
        const double delta = next.l1_distance(f);
        f = std::move(next);
        if (delta < tol) {
            return PowerIterationResult{std::move(f), it, true, delta};
        }
    }
    throw NonConvergenceError("power iteration did not reach tolerance " +
                              std::to_string(tol) + " in " + std::to_string(max_iters) +
                              " iterations");
}

double integral_against_g(const GridFunction& f, double a, double b, NcfParams params) {
    validate(params);
    if (!(0.0 <= a && a <= b && b <= 1.0)) {
        throw std::invalid_argument("integration range outside [0, 1]");
    }
    const double n = static_cast<double>(params.n_param);
    const double k = 1.0 / std::log1p(1.0 / n);
    const double h = f.step();
    const std::size_t m = f.grid_size();

    double acc = 0.0;
    const auto first = static_cast<std::size_t>(a / h);
    for (std::size_t j = first; j < m; ++j) {
        const double x_lo = f.node_x(j);
        if (x_lo >= b) break;
        const double lo = std::max(a, x_lo);
        const double hi = std::min(b, f.node_x(j + 1));
        if (hi <= lo) continue;
        // On the cell f(t) = alpha + beta t; integral against k/(t+N) is
        // exact: k [alpha L + beta ((hi-lo) - N L)], L = log((hi+N)/(lo+N)).
        const double beta = (f.node(j + 1) - f.node(j)) / h;
        const double alpha = f.node(j) - beta * x_lo;
        const double big_l = std::log1p((hi - lo) / (lo + n));
        acc += alpha * big_l + beta * ((hi - lo) - n * big_l);
    }
    return k * acc;
}

double preimage_integral_against_g(const GridFunction& f, double a, double b,
                                   NcfParams params, int explicit_terms) {
    validate(params);
    if (!(0.0 <= a && a <= b && b <= 1.0)) {
        throw std::invalid_argument("integration range outside [0, 1]");
    }
    const double n = static_cast<double>(params.n_param);
    const double k = 1.0 / std::log1p(1.0 / n);
    const double h = f.step();

    // Sum exactly over branches until every preimage sits in the first cell.
    const long cell_edge = static_cast<long>(std::ceil(n / h - a));
    const long last = std::max<long>({params.n_param, explicit_terms, cell_edge});
    double acc = 0.0;
    for (long i = params.n_param; i <= last; ++i) {
        const double d = static_cast<double>(i);
        acc += integral_against_g(f, n / (b + d), n / (a + d), params);
    }
    // Tail over the first cell, where f(t) = f0 + c t:
    //   f0 k log((b+I+1)/(a+I+1))
    //   + c k [N (psi(b+I+1) - psi(a+I+1)) - N log((b+I+1)/(a+I+1))].
    const double f0 = f.node(0);
    const double c = (f.node(1) - f0) / h;
    const double ya = a + static_cast<double>(last) + 1.0;
    const double yb = b + static_cast<double>(last) + 1.0;
    const double log_tail = std::log1p((b - a) / ya);
    const double psi_tail = digamma(yb) - digamma(ya);
    acc += f0 * log_tail + c * n * (psi_tail - log_tail);
    return k * acc;
}

std::vector<GaussKuzminRow> gauss_kuzmin_experiment(const std::vector<double>& probes,
                                                    int n_steps, const OperatorConfig& cfg) {
    validate(cfg);
    if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
    for (double p : probes) {
        if (!(0.0 <= p && p <= 1.0)) throw std::invalid_argument("probe outside [0, 1]");
    }
    const double n = static_cast<double>(cfg.params.n_param);
    const double log_ratio = std::log1p(1.0 / n);
    const double k = 1.0 / log_ratio;

    // For mu = lambda the evolved observable is f(x) = log((N+1)/N)(x+N),
    // and lambda(T^{-m}[0, x]) = int_0^x U^m f dG_N.
    GridFunction g =
        GridFunction::sample(cfg.grid_size, [&](double x) { return log_ratio * (x + n); });

    std::vector<GaussKuzminRow> rows;
    for (int m = 0; m <= n_steps; ++m) {
        if (m > 0) g = apply_U(g, cfg).f;
        GaussKuzminRow row;
        row.n = m;
        for (double p : probes) {
            const double lambda_val = integral_against_g(g, 0.0, p, cfg.params);
            const double target = k * std::log1p(p / n);
            row.lambda_value.push_back(lambda_val);
            row.deviation.push_back(std::abs(lambda_val - target));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double lebesgue_preimage_cdf(double x, NcfParams params, int explicit_terms) {
    validate(params);
    if (!(0.0 <= x && x <= 1.0)) throw std::invalid_argument("x outside [0, 1]");
    const double n = static_cast<double>(params.n_param);
    // lambda(T^{-1}[0, x]) = sum_i (N/i - N/(x+i)) = N sum_i x/(i(x+i)).
    double acc = 0.0;
    const long last = params.n_param + explicit_terms - 1;
    for (long i = params.n_param; i <= last; ++i) {
        const double d = static_cast<double>(i);
        acc += x / (d * (x + d));
    }
    const double edge = static_cast<double>(last + 1);
    return n * (acc + (digamma(x + edge) - digamma(edge)));
}

BracketedValue lebesgue_preimage2_cdf(double x, NcfParams params, int explicit_terms) {
    validate(params);
    if (!(0.0 <= x && x <= 1.0)) throw std::invalid_argument("x outside [0, 1]");
    const double n = static_cast<double>(params.n_param);
    // lambda(T^{-1}[l, r]) = N (psi(r+N) - psi(l+N)); apply it to every
    // branch preimage [N/(x+i), N/i] of [0, x].
    double acc = 0.0;
    const long last = params.n_param + explicit_terms - 1;
    for (long i = params.n_param; i <= last; ++i) {
        const double d = static_cast<double>(i);
        acc += digamma(n / d + n) - digamma(n / (x + d) + n);
    }
    // For i > I every preimage lies in [0, N/(I+1)]; bracket psi' there.
    const double edge = static_cast<double>(last + 1);
    const double width = n * (digamma(x + edge) - digamma(edge));  // total length
    const double lo_slope = tail_sum_square(n + n / edge);
    const double hi_slope = tail_sum_square(n);
    const double tail_mid = 0.5 * (lo_slope + hi_slope) * width;
    const double tail_err = 0.5 * (hi_slope - lo_slope) * width;
    return BracketedValue{n * acc + n * tail_mid,
                          n * tail_err + 64 * DBL_EPSILON * (n * acc + 1.0)};
}

VariationCheck variation_contraction_check(const GridFunction& f, const OperatorConfig& cfg) {
    if (!f.is_monotone(+1) && !f.is_monotone(-1)) {
        throw std::invalid_argument("input must be monotone");
    }
    const GridFunction uf = apply_U(f, cfg).f;
    VariationCheck check;
    check.var_f = f.node_variation();
    check.var_uf = uf.node_variation();
    check.ratio = check.var_f == 0.0 ? 0.0 : check.var_uf / check.var_f;
    return check;
}

double lipschitz_constant_q(NcfParams params, double tol) {
    validate(params);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    const double n = static_cast<double>(params.n_param);
    const long start = params.n_param;
    const long last = start + 511;
    double acc = 0.0;
    for (long i = start; i <= last; ++i) {
        const double d = static_cast<double>(i);
        acc += n / (d * d * d * (d + 1.0)) + (d + 1.0 - n) / (d * (d + 1.0) * (d + 1.0) * (d + 1.0));
    }
    // Closed tails from partial fractions:
    //   sum_{i>I} 1/(i^3(i+1))     = S3(I+1) - S2(I+1) + 1/(I+1)
    //   sum_{i>I} (i+1-N)/(i(i+1)^3) = (1-N)(1/(I+1) - S2(I+2)) + N S3(I+2)
    const double y1 = static_cast<double>(last + 1);
    const double y2 = static_cast<double>(last + 2);
    const double tail1 = n * (tail_sum_cube(y1) - tail_sum_square(y1) + 1.0 / y1);
    const double tail2 = (1.0 - n) * (1.0 / y1 - tail_sum_square(y2)) + n * tail_sum_cube(y2);
    const double q = n * (acc + tail1 + tail2);
    if (kSpecialFunctionRelError * (1.0 + std::abs(q)) > tol) {
        throw std::invalid_argument("requested tolerance below the certified accuracy");
    }
    return q;
}

LipschitzCheck lipschitz_contraction_check(const GridFunction& f, const OperatorConfig& cfg) {
    const GridFunction uf = apply_U(f, cfg).f;
    return LipschitzCheck{f.slope_seminorm(), uf.slope_seminorm()};
}

}  // namespace ncf
