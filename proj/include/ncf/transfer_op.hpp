#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ncf/expansion.hpp"

namespace ncf {

// Piecewise-linear function on the uniform grid x_j = j/grid_size,
// j = 0..grid_size. Immutable after construction.
class GridFunction {
public:
    GridFunction(std::size_t grid_size, std::vector<double> values);
    static GridFunction constant(std::size_t grid_size, double c);
    static GridFunction sample(std::size_t grid_size, const std::function<double(double)>& f);

    std::size_t grid_size() const { return grid_size_; }
    double step() const { return 1.0 / static_cast<double>(grid_size_); }
    double node_x(std::size_t j) const { return static_cast<double>(j) * step(); }
    double node(std::size_t j) const { return values_[j]; }
    const std::vector<double>& values() const { return values_; }

    // Piecewise-linear evaluation; x clamped to [0, 1].
    double operator()(double x) const;

    double sup_abs() const;
    double integral() const;  // composite trapezoid
    double l1_distance(const GridFunction& other) const;
    // var f over the node sequence (equals |f(0)-f(1)| for monotone f).
    double node_variation() const;
    // Discrete Lipschitz seminorm: max adjacent-node slope magnitude.
    double slope_seminorm() const;
    bool is_monotone(int direction) const;  // +1 non-decreasing, -1 non-increasing

private:
    std::size_t grid_size_;
    std::vector<double> values_;
};

struct OperatorConfig {
    NcfParams params;
    // Acceptance threshold for the certified truncation error of a single
    // operator application.
    double series_cutoff_tol = 1e-10;
    std::size_t grid_size = 4096;
};

void validate(const OperatorConfig& cfg);

struct OperatorResult {
    GridFunction f;
    // Certified bound on the series-evaluation error at any node (tail
    // completion remainder plus a first-order summation estimate).
    double error_budget;
};

// Perron-Frobenius operator under G_N:
//   Uf(x) = sum_{i >= N} V_{N,i}(x) f(N/(x+i)).
// Terms with N/(x+i) inside the first grid cell are summed in closed form
// (the piecewise-linear f is exactly f(0) + c u there), so the series is
// evaluated to certified accuracy far below series_cutoff_tol.
OperatorResult apply_U(const GridFunction& f, const OperatorConfig& cfg);

// Perron-Frobenius operator under Lebesgue measure:
//   Kf(x) = sum_{i >= N} N/(x+i)^2 f(N/(x+i)).
OperatorResult apply_K(const GridFunction& f, const OperatorConfig& cfg);

// Strictly positive density h = d mu / d lambda on the grid.
struct DensityPair {
    GridFunction h;
    NcfParams params;
};

// Perron-Frobenius operator under mu = h d lambda:
//   Sf(x) = (N/h(x)) sum_{i >= N} h(N/(x+i))/(x+i)^2 f(N/(x+i)).
// Throws std::domain_error when h is not strictly positive on the grid.
OperatorResult apply_S(const GridFunction& f, const DensityPair& mu,
                       const OperatorConfig& cfg);

struct PowerIterationResult {
    GridFunction density;
    int iterations = 0;
    bool converged = false;
    double final_l1_delta = 0.0;
};

// Iterates K on the uniform density until the L1 successive difference
// drops below tol; the fixed point is rho_N. Throws NonConvergenceError
// after max_iters.
PowerIterationResult invariant_density_power_iteration(const OperatorConfig& cfg,
                                                       int max_iters, double tol);

struct GaussKuzminRow {
    int n;
    std::vector<double> lambda_value;  // lambda(T^{-n}[0, x]) per probe
    std::vector<double> deviation;     // |lambda_value - G_N([0, x])| per probe
};

// Gauss' problem experiment: how fast lambda(T^{-n}[0, x]) approaches
// G_N([0, x]); rows for n = 0..n_steps.
std::vector<GaussKuzminRow> gauss_kuzmin_experiment(const std::vector<double>& probes,
                                                    int n_steps, const OperatorConfig& cfg);

// lambda(T^{-1}[0, x]) summed directly over branch preimages with a digamma
// tail; independent of the operator route.
double lebesgue_preimage_cdf(double x, NcfParams params, int explicit_terms = 4096);
// lambda(T^{-2}[0, x]) by two-level branch enumeration; the returned pair is
// (value, certified error bound).
struct BracketedValue {
    double value;
    double error_bound;
};
BracketedValue lebesgue_preimage2_cdf(double x, NcfParams params, int explicit_terms = 4096);

// Integral of f against G_N over [a, b] (piecewise-exact for the PL f).
double integral_against_g(const GridFunction& f, double a, double b, NcfParams params);
// Same for the branch preimage T^{-1}[a, b], with exact telescoped tails.
double preimage_integral_against_g(const GridFunction& f, double a, double b,
                                   NcfParams params, int explicit_terms = 4096);

struct VariationCheck {
    double var_f;
    double var_uf;
    double ratio;  // var_uf / var_f (0 when var_f == 0)
};

// Prop. 4.2(i): monotone input f, reversed-monotone Uf, and
// var(Uf) <= var(f)/(N+1). Throws std::invalid_argument for non-monotone f.
VariationCheck variation_contraction_check(const GridFunction& f, const OperatorConfig& cfg);

// q = N sum_{i >= N} (N/(i^3(i+1)) + (i+1-N)/(i(i+1)^3)), summed with a
// closed-form tail below tol.
double lipschitz_constant_q(NcfParams params, double tol);

struct LipschitzCheck {
    double s_f;
    double s_uf;
};

LipschitzCheck lipschitz_contraction_check(const GridFunction& f, const OperatorConfig& cfg);

}  // namespace ncf
