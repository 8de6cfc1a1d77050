// ncf: command-line surface for the N-continued-fraction library.
//
// Exit codes: 0 ok, 2 usage/parse error, 3 precision exhaustion,
// 4 numerical non-convergence.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "ncf/cylinders.hpp"
#include "ncf/errors.hpp"
#include "ncf/expansion.hpp"
#include "ncf/measures.hpp"
#include "ncf/natext.hpp"
#include "ncf/random_source.hpp"
#include "ncf/serialize.hpp"
#include "ncf/transfer_op.hpp"

namespace {

using ncf::Json;

struct CommonOpts {
    long n = 1;
    long precision = 256;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--n", opts.n, "family parameter N (>= 1)")->required();
    cmd->add_option("--precision", opts.precision, "working precision in bits")
        ->envname("NCF_PRECISION");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

ncf::NcfParams params_of(const CommonOpts& opts) {
    ncf::NcfParams p{opts.n};
    ncf::validate(p);
    if (opts.precision < 64) throw std::invalid_argument("precision must be >= 64 bits");
    return p;
}

std::vector<long> parse_digit_list(const std::string& text) {
    std::vector<long> digits;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) {
                digits.push_back(std::stol(cur));
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    return digits;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// ---- expand ---------------------------------------------------------------

struct ExpandOpts {
    CommonOpts common;
    std::string x;
    long depth = 32;
};

int run_expand(const ExpandOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    if (o.depth < 1) throw std::invalid_argument("--depth must be >= 1");

    ncf::ExpandResult res;
    Json errors = Json::array();
    const auto rational = ncf::rational_try_parse(o.x);
    if (rational) {
        res = ncf::expand(*rational, params, static_cast<std::size_t>(o.depth));
        if (!res.digits.empty()) {
            const ncf::ConvergentTable t = ncf::convergents(res.digits);
            for (long n = 1; n <= t.depth(); ++n) {
                errors.push_back(
                    Json{{"n", n},
                         {"error", ncf::approximation_error(*rational, t, n).str()},
                         {"bound", (ncf::rational_pow(ncf::Rational(params.n_param), n) /
                                    ncf::Rational(ncf::BigInt(t.q(n) * t.q(n))))
                                       .str()}});
            }
        }
    } else {
        const ncf::RealExpr expr = ncf::RealExpr::parse(o.x);
        ncf::PrecisionPolicy policy;
        policy.initial = o.common.precision;
        policy.cap = std::max<long>(o.common.precision, 1 << 14);
        res = ncf::expand(expr, params, static_cast<std::size_t>(o.depth), policy);
        if (res.precision_exhausted) {
            throw ncf::PrecisionExhaustedError(
                "digit extraction stalled at " + std::to_string(res.digits.size()) +
                " digits; enclosure too wide");
        }
        if (!res.digits.empty()) {
            const ncf::Ball x = expr.eval(policy.cap);
            const ncf::ConvergentTable t = ncf::convergents(res.digits);
            for (long n = 1; n <= t.depth(); ++n) {
                errors.push_back(Json{{"n", n},
                                      {"error", ncf::approximation_error(x, t, n).mid_double()}});
            }
        }
    }

    Json out{{"schema_version", ncf::kSchemaVersion},
             {"digits", ncf::to_json(res.digits)["digits"]},
             {"terminated", res.terminated}};
    if (!res.digits.empty()) {
        out["convergents"] = ncf::to_json(ncf::convergents(res.digits));
    }
    out["errors"] = std::move(errors);
    emit(out);
    return 0;
}

// ---- eval / convergents / cylinder ----------------------------------------

struct DigitsOpts {
    CommonOpts common;
    std::string digits;
    std::string tail = "0";
};

int run_eval(const DigitsOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    const ncf::DigitSequence d = ncf::make_digits(params, parse_digit_list(o.digits));
    const ncf::Rational value = ncf::eval_digits(d, ncf::rational_parse(o.tail));
    emit(Json{{"schema_version", ncf::kSchemaVersion}, {"value", value.str()}});
    return 0;
}

int run_convergents(const DigitsOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    const ncf::DigitSequence d = ncf::make_digits(params, parse_digit_list(o.digits));
    Json out = ncf::to_json(ncf::convergents(d));
    out["schema_version"] = ncf::kSchemaVersion;
    emit(out);
    return 0;
}

int run_cylinder(const DigitsOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    const ncf::DigitSequence d = ncf::make_digits(params, parse_digit_list(o.digits));
    Json out = ncf::to_json(ncf::cylinder(d));
    out["schema_version"] = ncf::kSchemaVersion;
    emit(out);
    return 0;
}

// ---- legendre ---------------------------------------------------------------

struct LegendreOpts {
    CommonOpts common;
    long p = 0;
    long q = 0;
    std::string x;
};

int run_legendre(const LegendreOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    const ncf::Rational pq(ncf::BigInt(o.p), ncf::BigInt(o.q));
    const ncf::Ball x = ncf::RealExpr::parse(o.x).eval(o.common.precision);
    Json out = ncf::to_json(ncf::legendre_test(pq, x, params));
    out["schema_version"] = ncf::kSchemaVersion;
    emit(out);
    return 0;
}

// ---- measure ----------------------------------------------------------------

struct MeasureOpts {
    CommonOpts common;
    std::vector<double> interval;
    double rho = -1.0;
    long digit = -1;
    std::vector<double> rect;
};

int run_measure(const MeasureOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    Json out{{"schema_version", ncf::kSchemaVersion}, {"N", params.n_param}};
    if (!o.interval.empty()) {
        if (o.interval.size() != 2) throw std::invalid_argument("--interval needs a b");
        out["g_measure"] = ncf::g_measure(o.interval[0], o.interval[1], params);
        out["g_preimage"] = ncf::g_measure_preimage(o.interval[0], o.interval[1], params);
    }
    if (o.rho >= 0.0) out["rho"] = ncf::rho_density(o.rho, params);
    if (o.digit >= 0) out["digit_law"] = ncf::stationary_digit_law(o.digit, params);
    if (!o.rect.empty()) {
        if (o.rect.size() != 4) throw std::invalid_argument("--rect needs x1 x2 y1 y2");
        const ncf::ExtendedMeasure m = ncf::ExtendedMeasure::make(params);
        out["extended_rect"] = m.rect(o.rect[0], o.rect[1], o.rect[2], o.rect[3]);
    }
    emit(out);
    return 0;
}

// ---- density ----------------------------------------------------------------

struct DensityOpts {
    CommonOpts common;
    long grid = 4096;
    double tol = 1e-8;
    long max_iters = 400;
};

int run_density(const DensityOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    ncf::OperatorConfig cfg{params, 1e-9, static_cast<std::size_t>(o.grid)};
    const ncf::PowerIterationResult res =
        ncf::invariant_density_power_iteration(cfg, static_cast<int>(o.max_iters), o.tol);

    const double k = 1.0 / std::log1p(1.0 / static_cast<double>(params.n_param));
    const ncf::GridFunction target = ncf::GridFunction::sample(
        cfg.grid_size,
        [&](double x) { return k / (x + static_cast<double>(params.n_param)); });
    const double distance = res.density.l1_distance(target);

    if (o.common.format == "csv") {
        std::cout << "x,value\n";
        for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
            std::cout << res.density.node_x(j) << "," << res.density.node(j) << "\n";
        }
        std::cout << "# iterations," << res.iterations << "\n";
        std::cout << "# l1_delta," << res.final_l1_delta << "\n";
        std::cout << "# l1_distance_to_rho," << distance << "\n";
    } else {
        Json values = Json::array();
        for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
            values.push_back(Json::array({res.density.node_x(j), res.density.node(j)}));
        }
        emit(Json{{"schema_version", ncf::kSchemaVersion},
                  {"iterations", res.iterations},
                  {"l1_delta", res.final_l1_delta},
                  {"l1_distance_to_rho", distance},
                  {"density", std::move(values)}});
    }
    return 0;
}

struct GkOpts {
    CommonOpts common;
    double x = 0.5;
    long steps = 8;
    long grid = 4096;
};

int run_gk(const GkOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    ncf::OperatorConfig cfg{params, 1e-9, static_cast<std::size_t>(o.grid)};
    const auto rows =
        ncf::gauss_kuzmin_experiment({o.x}, static_cast<int>(o.steps), cfg);
    if (o.common.format == "csv") {
        std::cout << "n,lambda,target,deviation\n";
        for (const auto& row : rows) {
            if (row.n == 0) continue;
            const double target = row.lambda_value[0] >= row.deviation[0]
                                      ? row.lambda_value[0] - row.deviation[0]
                                      : row.lambda_value[0] + row.deviation[0];
            std::cout << row.n << "," << row.lambda_value[0] << "," << target << ","
                      << row.deviation[0] << "\n";
        }
    } else {
        Json out_rows = Json::array();
        for (const auto& row : rows) {
            if (row.n == 0) continue;
            out_rows.push_back(Json{{"n", row.n},
                                    {"lambda", row.lambda_value[0]},
                                    {"deviation", row.deviation[0]}});
        }
        emit(Json{{"schema_version", ncf::kSchemaVersion},
                  {"x", o.x},
                  {"rows", std::move(out_rows)}});
    }
    return 0;
}

// ---- operator ----------------------------------------------------------------

struct OperatorOpts {
    CommonOpts common;
    std::string op = "U";
    std::string function = "x";
    long grid = 4096;
    double tol = 1e-10;
};

ncf::GridFunction named_function(const std::string& name, std::size_t grid, long n) {
    if (name == "x") return ncf::GridFunction::sample(grid, [](double x) { return x; });
    if (name == "one") return ncf::GridFunction::constant(grid, 1.0);
    if (name == "square") {
        return ncf::GridFunction::sample(grid, [](double x) { return x * x; });
    }
    if (name == "rho") {
        const double k = 1.0 / std::log1p(1.0 / static_cast<double>(n));
        return ncf::GridFunction::sample(
            grid, [&](double x) { return k / (x + static_cast<double>(n)); });
    }
    throw std::invalid_argument("unknown test function '" + name + "'");
}

int run_operator_apply(const OperatorOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    ncf::OperatorConfig cfg{params, 1e-9, static_cast<std::size_t>(o.grid)};
    const ncf::GridFunction f = named_function(o.function, cfg.grid_size, params.n_param);
    ncf::OperatorResult res{ncf::GridFunction::constant(cfg.grid_size, 0.0), 0.0};
    if (o.op == "U") {
        res = ncf::apply_U(f, cfg);
    } else if (o.op == "K") {
        res = ncf::apply_K(f, cfg);
    } else if (o.op == "S") {
        const ncf::DensityPair mu{named_function("rho", cfg.grid_size, params.n_param), params};
        res = ncf::apply_S(f, mu, cfg);
    } else {
        throw std::invalid_argument("unknown operator '" + o.op + "'");
    }
    if (o.common.format == "csv") {
        std::cout << "x,value\n";
        for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
            std::cout << res.f.node_x(j) << "," << res.f.node(j) << "\n";
        }
        std::cout << "# error_budget," << res.error_budget << "\n";
    } else {
        Json values = Json::array();
        for (std::size_t j = 0; j <= cfg.grid_size; ++j) {
            values.push_back(Json::array({res.f.node_x(j), res.f.node(j)}));
        }
        emit(Json{{"schema_version", ncf::kSchemaVersion},
                  {"operator", o.op},
                  {"error_budget", res.error_budget},
                  {"values", std::move(values)}});
    }
    return 0;
}

int run_operator_q(const OperatorOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    emit(Json{{"schema_version", ncf::kSchemaVersion},
              {"N", params.n_param},
              {"q", ncf::lipschitz_constant_q(params, o.tol)}});
    return 0;
}

int run_operator_contraction(const OperatorOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    ncf::OperatorConfig cfg{params, 1e-9, static_cast<std::size_t>(o.grid)};
    const ncf::GridFunction f = named_function(o.function, cfg.grid_size, params.n_param);
    const ncf::VariationCheck var = ncf::variation_contraction_check(f, cfg);
    const ncf::LipschitzCheck lip = ncf::lipschitz_contraction_check(f, cfg);
    emit(Json{{"schema_version", ncf::kSchemaVersion},
              {"var_f", var.var_f},
              {"var_Uf", var.var_uf},
              {"ratio", var.ratio},
              {"var_bound", 1.0 / static_cast<double>(params.n_param + 1)},
              {"s_f", lip.s_f},
              {"s_Uf", lip.s_uf},
              {"q", ncf::lipschitz_constant_q(params, 1e-12)}});
    return 0;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateDigitsOpts {
    CommonOpts common;
    long samples = 0;
    long chain_length = 1;
    std::uint64_t seed = 0;
    bool summary_only = false;
};

int run_simulate_digits(const SimulateDigitsOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    if (o.samples < 0) throw std::invalid_argument("--samples must be >= 0");
    if (o.chain_length < 1) throw std::invalid_argument("--chain-length must be >= 1");
    ncf::RandomSource rng(o.seed);

    const long max_digit = params.n_param + 15;
    const std::size_t bins = static_cast<std::size_t>(max_digit - params.n_param + 1);
    std::vector<long> observed(bins, 0);
    std::vector<double> predicted(bins, 0.0);
    std::vector<double> variance(bins, 0.0);

    for (long s = 0; s < o.samples; ++s) {
        ncf::BrodenState state{params, 0.0, std::nullopt};
        for (long step = 1; step <= o.chain_length; ++step) {
            for (std::size_t b = 0; b < bins; ++b) {
                const double p =
                    ncf::digit_conditional(params.n_param + static_cast<long>(b), state);
                predicted[b] += p;
                variance[b] += p * (1.0 - p);
            }
            const ncf::MarkovStep step_result = ncf::markov_step(state, rng);
            if (step_result.digit <= max_digit) {
                ++observed[static_cast<std::size_t>(step_result.digit - params.n_param)];
            }
            if (!o.summary_only) {
                emit(Json{{"digit", step_result.digit}, {"s", state.s}, {"step", step}});
            }
            state = step_result.next;
        }
    }

    Json comparison = Json::array();
    double max_abs_z = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const long i = params.n_param + static_cast<long>(b);
        const double z = variance[b] > 0.0
                             ? (static_cast<double>(observed[b]) - predicted[b]) /
                                   std::sqrt(variance[b])
                             : 0.0;
        max_abs_z = std::max(max_abs_z, std::abs(z));
        if (o.common.format == "csv") {
            comparison.push_back(Json::array(
                {i, observed[b], predicted[b], z}));
        } else {
            comparison.push_back(Json{{"digit", i},
                                      {"observed", observed[b]},
                                      {"expected", predicted[b]},
                                      {"z", z}});
        }
    }
    if (o.common.format == "csv") {
        std::cout << "i,observed,expected,z\n";
        for (const auto& row : comparison) {
            std::cout << row[0].get<long>() << "," << row[1].get<long>() << ","
                      << row[2].get<double>() << "," << row[3].get<double>() << "\n";
        }
        std::cout << "# max_abs_z," << max_abs_z << "\n";
    } else {
        emit(Json{{"schema_version", ncf::kSchemaVersion},
                  {"summary", true},
                  {"samples", o.samples},
                  {"chain_length", o.chain_length},
                  {"seed", o.seed},
                  {"max_abs_z", max_abs_z},
                  {"digits", std::move(comparison)}});
    }
    return 0;
}

struct SimulateNatextOpts {
    CommonOpts common;
    long steps = 10;
    std::string x;
    std::string y = "0";
};

int run_simulate_natext(const SimulateNatextOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    ncf::NatExtPoint p{ncf::rational_parse(o.x), ncf::rational_parse(o.y)};
    for (long step = 1; step <= o.steps; ++step) {
        if (p.x.is_zero()) {
            emit(Json{{"terminated_at", step - 1}, {"reason", "x = 0"}});
            return 0;
        }
        const auto digit = ncf::index_map(p.x, params);
        p = ncf::natext_forward(p, params);
        Json line = ncf::to_json(p);
        line["step"] = step;
        line["digit"] = digit->get_str();
        emit(line);
    }
    return 0;
}

// ---- natext point queries ------------------------------------------------

struct NatextOpts {
    CommonOpts common;
    std::string x;
    std::string y;
    bool inverse = false;
    long digit_index = 1;
    bool query_digit = false;
};

int run_natext(const NatextOpts& o) {
    const ncf::NcfParams params = params_of(o.common);
    const ncf::NatExtPoint p{ncf::rational_parse(o.x), ncf::rational_parse(o.y)};
    Json out{{"schema_version", ncf::kSchemaVersion}};
    if (o.query_digit) {
        out["l"] = o.digit_index;
        out["digit"] = ncf::extended_digit(p, o.digit_index, params).get_str();
    } else {
        const ncf::NatExtPoint image =
            o.inverse ? ncf::natext_inverse(p, params) : ncf::natext_forward(p, params);
        out["point"] = ncf::to_json(image);
    }
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-continued fraction expansions: exact arithmetic, measures, operators"};
    app.require_subcommand(1);

    ExpandOpts expand_opts;
    auto* cmd_expand = app.add_subcommand("expand", "digit extraction with convergents");
    add_common(cmd_expand, expand_opts.common);
    cmd_expand->add_option("--x", expand_opts.x, "value in [0,1]: rational or sqrt expression")
        ->required();
    cmd_expand->add_option("--depth", expand_opts.depth, "maximum digits");

    DigitsOpts eval_opts;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a digit string");
    add_common(cmd_eval, eval_opts.common);
    cmd_eval->add_option("--digits", eval_opts.digits, "comma-separated digits")->required();
    cmd_eval->add_option("--tail", eval_opts.tail, "tail value in [0,1)");

    DigitsOpts conv_opts;
    auto* cmd_conv = app.add_subcommand("convergents", "p/q recurrence table");
    add_common(cmd_conv, conv_opts.common);
    cmd_conv->add_option("--digits", conv_opts.digits, "comma-separated digits")->required();

    DigitsOpts cyl_opts;
    auto* cmd_cyl = app.add_subcommand("cylinder", "fundamental interval of a digit string");
    add_common(cmd_cyl, cyl_opts.common);
    cmd_cyl->add_option("--digits", cyl_opts.digits, "comma-separated digits")->required();

    LegendreOpts leg_opts;
    auto* cmd_leg = app.add_subcommand("legendre", "Legendre-type convergent test");
    add_common(cmd_leg, leg_opts.common);
    cmd_leg->add_option("--p", leg_opts.p, "numerator")->required();
    cmd_leg->add_option("--q", leg_opts.q, "denominator")->required();
    cmd_leg->add_option("--x", leg_opts.x, "target real (sqrt expression)")->required();

    MeasureOpts measure_opts;
    auto* cmd_measure = app.add_subcommand("measure", "invariant and extended measures");
    add_common(cmd_measure, measure_opts.common);
    cmd_measure->add_option("--interval", measure_opts.interval, "a b: G_N([a,b])")
        ->expected(2);
    cmd_measure->add_option("--rho", measure_opts.rho, "density at x");
    cmd_measure->add_option("--digit", measure_opts.digit, "G_N(a_1 = i)");
    cmd_measure->add_option("--rect", measure_opts.rect, "x1 x2 y1 y2: extended measure")
        ->expected(4);

    DensityOpts density_opts;
    auto* cmd_density = app.add_subcommand("density", "invariant density by power iteration");
    add_common(cmd_density, density_opts.common);
    cmd_density->add_option("--grid", density_opts.grid, "grid size");
    cmd_density->add_option("--tol", density_opts.tol, "L1 stopping tolerance");
    cmd_density->add_option("--max-iters", density_opts.max_iters, "iteration cap");

    GkOpts gk_opts;
    auto* cmd_gk = cmd_density->add_subcommand("gk", "Gauss-Kuzmin deviation table");
    add_common(cmd_gk, gk_opts.common);
    cmd_gk->add_option("--x", gk_opts.x, "probe point");
    cmd_gk->add_option("--steps", gk_opts.steps, "number of operator steps");
    cmd_gk->add_option("--grid", gk_opts.grid, "grid size");

    OperatorOpts op_opts;
    auto* cmd_op = app.add_subcommand("operator", "Perron-Frobenius operators");
    auto* cmd_op_apply = cmd_op->add_subcommand("apply", "apply U, K, or S");
    add_common(cmd_op_apply, op_opts.common);
    cmd_op_apply->add_option("--op", op_opts.op, "U | K | S");
    cmd_op_apply->add_option("--function", op_opts.function, "x | one | square | rho");
    cmd_op_apply->add_option("--grid", op_opts.grid, "grid size");
    OperatorOpts q_opts;
    auto* cmd_op_q = cmd_op->add_subcommand("q", "Lipschitz contraction constant");
    add_common(cmd_op_q, q_opts.common);
    cmd_op_q->add_option("--tol", q_opts.tol, "certified tolerance");
    OperatorOpts contraction_opts;
    auto* cmd_op_con = cmd_op->add_subcommand("contraction", "seminorm contraction report");
    add_common(cmd_op_con, contraction_opts.common);
    cmd_op_con->add_option("--function", contraction_opts.function, "x | one | square | rho");
    cmd_op_con->add_option("--grid", contraction_opts.grid, "grid size");

    SimulateDigitsOpts sim_digits_opts;
    auto* cmd_sim = app.add_subcommand("simulate", "seeded Monte-Carlo harnesses");
    auto* cmd_sim_digits = cmd_sim->add_subcommand("digits", "digit-law sampling");
    add_common(cmd_sim_digits, sim_digits_opts.common);
    cmd_sim_digits->add_option("--samples", sim_digits_opts.samples, "number of chains")
        ->required();
    cmd_sim_digits->add_option("--seed", sim_digits_opts.seed, "RNG seed")->required();
    cmd_sim_digits->add_option("--chain-length", sim_digits_opts.chain_length,
                               "digits per chain");
    cmd_sim_digits->add_flag("--summary-only", sim_digits_opts.summary_only,
                             "suppress per-sample lines");

    SimulateNatextOpts sim_nat_opts;
    auto* cmd_sim_nat = cmd_sim->add_subcommand("natext", "exact natural-extension orbit");
    add_common(cmd_sim_nat, sim_nat_opts.common);
    cmd_sim_nat->add_option("--steps", sim_nat_opts.steps, "orbit length");
    cmd_sim_nat->add_option("--x", sim_nat_opts.x, "rational x")->required();
    cmd_sim_nat->add_option("--y", sim_nat_opts.y, "rational y");

    NatextOpts natext_opts;
    auto* cmd_natext = app.add_subcommand("natext", "natural-extension point queries");
    add_common(cmd_natext, natext_opts.common);
    cmd_natext->add_option("--x", natext_opts.x, "rational x")->required();
    cmd_natext->add_option("--y", natext_opts.y, "rational y")->required();
    cmd_natext->add_flag("--inverse", natext_opts.inverse, "apply the inverse map");
    cmd_natext->add_flag("--digit", natext_opts.query_digit, "query an extended digit");
    cmd_natext->add_option("--l", natext_opts.digit_index, "extended digit index");

    try {
        app.parse(argc, argv);

        if (cmd_expand->parsed()) return run_expand(expand_opts);
        if (cmd_eval->parsed()) return run_eval(eval_opts);
        if (cmd_conv->parsed()) return run_convergents(conv_opts);
        if (cmd_cyl->parsed()) return run_cylinder(cyl_opts);
        if (cmd_leg->parsed()) return run_legendre(leg_opts);
        if (cmd_measure->parsed()) return run_measure(measure_opts);
        if (cmd_density->parsed()) {
            if (cmd_gk->parsed()) return run_gk(gk_opts);
            return run_density(density_opts);
        }
        if (cmd_op->parsed()) {
            if (cmd_op_apply->parsed()) return run_operator_apply(op_opts);
            if (cmd_op_q->parsed()) return run_operator_q(q_opts);
            if (cmd_op_con->parsed()) return run_operator_contraction(contraction_opts);
            throw CLI::CallForHelp();
        }
        if (cmd_sim->parsed()) {
            if (cmd_sim_digits->parsed()) return run_simulate_digits(sim_digits_opts);
            if (cmd_sim_nat->parsed()) return run_simulate_natext(sim_nat_opts);
            throw CLI::CallForHelp();
        }
        if (cmd_natext->parsed()) return run_natext(natext_opts);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ncf::PrecisionExhaustedError& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const ncf::AmbiguousEnclosureError& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const ncf::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
