#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end
 *
 * Commands: beta, verify-kernel, certify, qtable, boundary.
 * Exit codes: 0 pass, 1 certified fail, 2 usage or parameter error,
 * 3 numerical failure.
 */

#include "admissibility.hpp"
#include "certifier.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "qfunc.hpp"
#include "sharp_beta.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace convexity::cli {

enum ExitCode : int { kPass = 0, kCertifiedFail = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
    std::string command;
    std::string kernel;
    std::optional<double> c, a, b, p;
    std::string kernel_json;
    std::optional<double> alpha, gamma;
    double delta = 0.0;
    double radius = 0.995;
    std::size_t grid = 4096;
    std::size_t series_n = 0;
    std::size_t points = 21;
    std::string output = "human";
    std::string out_path;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double need(const std::optional<double>& v, const char* flag, const std::string& kernel) {
    if (!v) throw UsageError("kernel " + kernel + " needs " + flag);
    return *v;
}

inline Kernel build_kernel(const RunConfig& cfg) {
    if (!cfg.kernel_json.empty()) {
        std::ifstream is(cfg.kernel_json);
        if (!is) throw UsageError("cannot read " + cfg.kernel_json);
        io::json j;
        try {
            j = io::json::parse(is);
        } catch (const io::json::parse_error& e) {
            throw UsageError(std::string("invalid kernel JSON: ") + e.what());
        }
        return io::kernel_from_json(j);
    }
    if (cfg.kernel.empty()) throw UsageError("--kernel or --kernel-json is required");
    if (cfg.kernel == "alexander") return Kernel::alexander();
    if (cfg.kernel == "libera") return Kernel::libera();
    if (cfg.kernel == "bernardi") return Kernel::bernardi(need(cfg.c, "--c", cfg.kernel));
    if (cfg.kernel == "two_param") {
        return Kernel::two_param(need(cfg.a, "--a", cfg.kernel), need(cfg.b, "--b", cfg.kernel));
    }
    if (cfg.kernel == "komatu") {
        return Kernel::komatu(need(cfg.a, "--a", cfg.kernel), need(cfg.p, "--p", cfg.kernel));
    }
    throw UsageError("unknown kernel " + cfg.kernel);
}

inline ClassParams build_params(const RunConfig& cfg) {
    if (!cfg.alpha) throw UsageError("--alpha is required");
    if (!cfg.gamma) throw UsageError("--gamma is required");
    ClassParams p{*cfg.alpha, *cfg.gamma, cfg.delta};
    p.validate();
    return p;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline std::string render_table(const Table& t, const std::string& format) {
    if (format == "csv") return io::to_csv(t.header, t.rows);
    if (format == "json") {
        io::json j;
        j["columns"] = t.header;
        j["rows"] = t.rows;
        return io::dump(j);
    }
    std::ostringstream os;
    os << std::setprecision(12);
    for (const auto& h : t.header) os << std::setw(22) << h;
    os << '\n';
    for (const auto& row : t.rows) {
        for (double v : row) os << std::setw(22) << v;
        os << '\n';
    }
    return os.str();
}

inline std::string human_value(double v) {
    if (!std::isfinite(v)) return "n/a";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline std::string human_flag(const std::optional<bool>& v) {
    return v ? (*v ? "pass" : "fail") : "n/a";
}

struct Outcome {
    int code = kPass;
    std::string text;
};

inline Outcome cmd_beta(const RunConfig& cfg) {
    const Kernel kernel = build_kernel(cfg);
    const BetaResult r = sharp_beta(kernel, build_params(cfg));
    if (cfg.output == "json") return {kPass, io::dump(io::to_json(r))};
    if (cfg.output == "csv") {
        return {kPass, io::to_csv({"beta", "integral_I", "mu", "nu", "delta", "crosscheck_residual"},
                                  {{r.beta, r.integral_I, r.spec.mu_nu.mu, r.spec.mu_nu.nu,
                                    r.spec.delta, r.crosscheck_residual}})};
    }
    std::ostringstream os;
    os << "kernel              " << kernel.kind() << '\n'
       << "mu, nu              " << human_value(r.spec.mu_nu.mu) << ", " << human_value(r.spec.mu_nu.nu) << '\n'
       << "delta               " << human_value(r.spec.delta) << '\n'
       << "integral I          " << human_value(r.integral_I) << '\n'
       << "beta                " << human_value(r.beta) << '\n'
       << "crosscheck residual " << human_value(r.crosscheck_residual) << '\n';
    return {kPass, os.str()};
}

inline Outcome cmd_verify_kernel(const RunConfig& cfg) {
    const Kernel kernel = build_kernel(cfg);
    const ClassParams params = build_params(cfg);
    const MuNu mn = resolve_mu_nu(params);

    const double mass = moment_by_quadrature(kernel, 0);
    double moment_gap = 0.0;
    for (int n = 0; n <= 50; ++n) {
        moment_gap = std::max(moment_gap, std::abs(moment(kernel, n) - moment_by_quadrature(kernel, n)));
    }
    std::optional<ConditionReport> c48, c49;
    std::optional<RatioReport> c41;
    if (mn.mu >= 1.0) {
        c48 = condition_4_8(kernel, mn);
        c41 = condition_4_1(kernel, mn, params.delta);
    }
    if (mn.is_gamma_zero() && params.alpha >= 1.0) c49 = condition_4_9(kernel, params.alpha);
    const LimitReport limits = check_limits(kernel, mn);
    const KernelHypothesis hyp = kernel_hypothesis(kernel, mn);

    const bool ok = std::abs(mass - 1.0) <= 1e-10 && moment_gap <= 1e-10 && (!c48 || c48->passed) &&
                    (!c49 || c49->passed) && (!c41 || c41->passed) && limits.passed &&
                    (!hyp.applicable || hyp.holds);
    const int code = ok ? kPass : kCertifiedFail;

    if (cfg.output == "json" || cfg.output == "csv") {
        io::json j;
        j["kernel"] = io::to_json(kernel);
        j["mu"] = mn.mu;
        j["nu"] = mn.nu;
        j["normalization"] = mass;
        j["moment_max_abs_diff"] = moment_gap;
        j["cond_4_8"] = c48 ? io::json{{"passed", c48->passed}, {"sup", c48->extreme}, {"bound", c48->bound},
                                       {"grid_points", c48->grid_points}, {"finite_difference", c48->finite_difference}}
                            : io::json(nullptr);
        j["cond_4_9"] = c49 ? io::json{{"passed", c49->passed}, {"inf", c49->extreme},
                                       {"lambda_at_one_zero", c49->endpoint_ok},
                                       {"grid_points", c49->grid_points}, {"finite_difference", c49->finite_difference}}
                            : io::json(nullptr);
        j["cond_4_1"] = c41 ? io::json{{"passed", c41->passed}, {"worst_increase", c41->worst_increase},
                                       {"worst_t", c41->worst_t}, {"grid_points", c41->grid_points}}
                            : io::json(nullptr);
        j["limits"] = {{"passed", limits.passed}, {"lambda", limits.lambda_values}, {"pi", limits.pi_values}};
        j["kernel_hypothesis"] = hyp.applicable ? io::json(hyp.holds) : io::json(nullptr);
        j["pass"] = ok;
        if (cfg.output == "json") return {code, io::dump(j)};
        auto flag = [](const std::optional<bool>& v) { return v ? (*v ? 1.0 : 0.0) : std::nan(""); };
        return {code, io::to_csv({"normalization", "moment_max_abs_diff", "cond_4_8", "cond_4_9", "cond_4_1", "limits",
                                  "kernel_hypothesis", "pass"},
                                 {{mass, moment_gap, flag(c48 ? std::optional<bool>(c48->passed) : std::nullopt),
                                   flag(c49 ? std::optional<bool>(c49->passed) : std::nullopt),
                                   flag(c41 ? std::optional<bool>(c41->passed) : std::nullopt),
                                   limits.passed ? 1.0 : 0.0,
                                   flag(hyp.applicable ? std::optional<bool>(hyp.holds) : std::nullopt),
                                   ok ? 1.0 : 0.0}})};
    }
    std::ostringstream os;
    os << "kernel                 " << kernel.kind() << '\n'
       << "mu, nu                 " << human_value(mn.mu) << ", " << human_value(mn.nu) << '\n'
       << "normalization          " << human_value(mass) << '\n'
       << "moment max |diff|      " << human_value(moment_gap) << '\n'
       << "cond_4_8               " << human_flag(c48 ? std::optional<bool>(c48->passed) : std::nullopt);
    if (c48) os << "  sup " << human_value(c48->extreme) << " vs " << human_value(c48->bound);
    os << '\n' << "cond_4_9               " << human_flag(c49 ? std::optional<bool>(c49->passed) : std::nullopt);
    if (c49) os << "  inf " << human_value(c49->extreme) << (c49->endpoint_ok ? "" : ", lambda(1) != 0");
    os << '\n' << "cond_4_1               " << human_flag(c41 ? std::optional<bool>(c41->passed) : std::nullopt);
    if (c41) os << "  worst increase " << human_value(c41->worst_increase) << " at t=" << human_value(c41->worst_t);
    os << '\n'
       << "limits                 " << (limits.passed ? "pass" : "fail") << '\n'
       << "kernel hypothesis      " << human_flag(hyp.applicable ? std::optional<bool>(hyp.holds) : std::nullopt) << '\n'
       << "result                 " << (ok ? "pass" : "fail") << '\n';
    return {code, os.str()};
}

inline Outcome cmd_certify(const RunConfig& cfg) {
    const Kernel kernel = build_kernel(cfg);
    CertifyConfig cc;
    cc.radius = cfg.radius;
    cc.n_theta = cfg.grid;
    cc.series_n = cfg.series_n;
    const Certificate cert = certify(kernel, build_params(cfg), cc);
    const int code = cert.pass ? kPass : (cert.numerical_failure ? kNumerical : kCertifiedFail);
    if (cfg.output == "json") return {code, io::dump(io::to_json(cert))};
    if (cfg.output == "csv") {
        return {code, io::to_csv({"pass", "beta", "integral_I", "grid_min_re", "sharpness_residual", "duality_min"},
                                 {{cert.pass ? 1.0 : 0.0, cert.beta, cert.integral_I, cert.grid_min_re,
                                   cert.sharpness_residual,
                                   cert.duality ? cert.duality->min : std::nan("")}})};
    }
    std::ostringstream os;
    os << "kernel              " << kernel.kind() << '\n'
       << "alpha, gamma, delta " << human_value(cert.params.alpha) << ", " << human_value(cert.params.gamma)
       << ", " << human_value(cert.params.delta) << '\n'
       << "mu, nu              " << human_value(cert.mu_nu.mu) << ", " << human_value(cert.mu_nu.nu) << '\n'
       << "beta                " << human_value(cert.beta) << '\n'
       << "grid min Re         " << human_value(cert.grid_min_re) << "  (r=" << cert.grid_radius
       << ", n_theta=" << cert.n_theta << ", N=" << cert.series_N << ")\n"
       << "sharpness ratio     " << human_value(cert.sharpness_ratio) << "  residual "
       << human_value(cert.sharpness_residual) << '\n'
       << "duality min         " << (cert.duality ? human_value(cert.duality->min) : "n/a") << '\n'
       << "cond_4_8            " << human_flag(cert.admissibility.cond_4_8) << '\n'
       << "cond_4_9            " << human_flag(cert.admissibility.cond_4_9) << '\n'
       << "cond_4_1            " << human_flag(cert.admissibility.cond_4_1) << '\n'
       << "limits              " << (cert.admissibility.limits ? "pass" : "fail") << '\n'
       << "kernel hypothesis   " << human_flag(cert.admissibility.kernel_hypothesis) << '\n';
    for (const auto& r : cert.reason_codes) os << "reason              " << r << '\n';
    os << "result              " << (cert.pass ? "pass" : "fail") << '\n';
    return {code, os.str()};
}

inline Outcome cmd_qtable(const RunConfig& cfg) {
    if (cfg.points < 2) throw UsageError("--points must be at least 2");
    const ClassParams params = build_params(cfg);
    const QSpec spec{resolve_mu_nu(params), params.delta};
    Table t{{"t", "q_integral", "q_series", "abs_diff"}, {}};
    for (std::size_t k = 0; k < cfg.points; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(cfg.points - 1);
        const double qi = q_integral(spec, x);
        const double qs = q_series(spec, x).value;
        t.rows.push_back({x, qi, qs, std::abs(qi - qs)});
    }
    return {kPass, render_table(t, cfg.output)};
}

inline Outcome cmd_boundary(const RunConfig& cfg) {
    const Kernel kernel = build_kernel(cfg);
    const ClassParams params = build_params(cfg);
    const MuNu mn = resolve_mu_nu(params);
    const double beta = sharp_beta(kernel, params).beta;
    const std::size_t N = cfg.series_n ? cfg.series_n : required_truncation(cfg.radius);
    const PowerSeries F = apply_transform(kernel, extremal_function(mn, beta, N));
    const auto values = convexity_quotient_curve(F, cfg.radius, cfg.grid);
    Table t{{"theta", "re"}, {}};
    t.rows.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        t.rows.push_back({2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.grid), values[k]});
    }
    return {kPass, render_table(t, cfg.output)};
}

inline void add_common_options(CLI::App& sub, RunConfig& cfg, bool kernel_flags) {
    if (kernel_flags) {
        sub.add_option("--kernel", cfg.kernel, "bernardi | two_param | komatu (aliases: alexander, libera)")
            ->check(CLI::IsMember({"bernardi", "two_param", "komatu", "alexander", "libera"}));
        sub.add_option("--c", cfg.c, "Bernardi parameter c > -1");
        sub.add_option("--a", cfg.a, "two_param / Komatu parameter a > -1");
        sub.add_option("--b", cfg.b, "two_param parameter b > -1");
        sub.add_option("--p", cfg.p, "Komatu parameter p > 0");
        sub.add_option("--kernel-json", cfg.kernel_json, "kernel descriptor file");
    }
    sub.add_option("--alpha", cfg.alpha, "class parameter alpha >= 0");
    sub.add_option("--gamma", cfg.gamma, "class parameter gamma >= 0");
    sub.add_option("--delta", cfg.delta, "target convexity order in [0, 0.5]")->check(CLI::Range(0.0, 0.5));
    sub.add_option("--output", cfg.output, "human | json | csv")->check(CLI::IsMember({"human", "json", "csv"}));
    sub.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
}

/// Runs one command; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Sharp convexity constants for integral transforms of W_beta(alpha, gamma)"};
    app.require_subcommand(1);

    auto* beta = app.add_subcommand("beta", "sharp beta for a kernel and class parameters");
    add_common_options(*beta, cfg, true);

    auto* verify = app.add_subcommand("verify-kernel", "moments and admissibility conditions of a kernel");
    add_common_options(*verify, cfg, true);

    auto* cert = app.add_subcommand("certify", "full certification run");
    add_common_options(*cert, cfg, true);

    auto* qtable = app.add_subcommand("qtable", "q(t) by quadrature and by series on a uniform grid");
    add_common_options(*qtable, cfg, false);
    qtable->add_option("--points", cfg.points, "number of grid points on [0, 1]");

    auto* boundary = app.add_subcommand("boundary", "Re(1 + zF''/F') on |z| = r for the extremal transform");
    add_common_options(*boundary, cfg, true);

    for (auto* sub : {cert, boundary}) {
        sub->add_option("--radius", cfg.radius, "evaluation radius")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--grid", cfg.grid, "number of boundary points")->check(CLI::PositiveNumber);
        sub->add_option("--series-n", cfg.series_n, "series truncation (default: from radius)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kUsage;
    }
    if (!(cfg.radius > 0.0 && cfg.radius < 1.0)) {
        err << "error: --radius must lie in (0, 1)\n";
        return kUsage;
    }

    Outcome outcome;
    try {
        if (beta->parsed()) outcome = cmd_beta(cfg);
        else if (verify->parsed()) outcome = cmd_verify_kernel(cfg);
        else if (cert->parsed()) outcome = cmd_certify(cfg);
        else if (qtable->parsed()) outcome = cmd_qtable(cfg);
        else outcome = cmd_boundary(cfg);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_parameter_error(e.code()) ? kUsage : kNumerical;
    }

    if (cfg.out_path.empty()) {
        out << outcome.text;
    } else {
        try {
            io::atomic_write(cfg.out_path, outcome.text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kNumerical;
        }
    }
    return outcome.code;
}

}  // namespace convexity::cli
