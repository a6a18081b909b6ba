#pragma once

/**
 * @file admissibility.hpp
 * @brief Grid checks of the sufficient conditions on lambda
 *
 * Each check evaluates a pointwise inequality on a finite grid with a fixed
 * slack. A pass is numerical evidence, not a proof; the reports carry the
 * grid size and the extreme value found so that results can be reproduced
 * and tightened.
 */

#include "errors.hpp"
#include "kernels.hpp"
#include "params.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace convexity {

inline constexpr double kConditionSlack = 1e-9;
inline constexpr int kConditionGrid = 1024;
inline constexpr int kRatioGrid = 512;

struct ConditionReport {
    bool passed = false;
    double extreme = 0.0;  ///< sup for cond_4_8, inf for cond_4_9, over the grid
    double bound = 0.0;
    int grid_points = 0;
    bool finite_difference = false;  ///< derivatives came from central differences
    bool endpoint_ok = true;         ///< lambda(1) = 0, only meaningful for cond_4_9

    explicit operator bool() const { return passed; }
};

/**
 * Grid on (0, 1) clustered at both ends: t = 1/(1 + e^{-s}) with s uniform
 * on [-20, 20]. Endpoint behaviour of t lambda'/lambda (log singularities)
 * is what decides the catalog conditions, so the ends get most points.
 */
inline std::vector<double> clustered_unit_grid(int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    constexpr double span = 20.0;
    for (int k = 0; k < points; ++k) {
        const double s = -span + 2.0 * span * (k + 0.5) / points;
        grid[static_cast<std::size_t>(k)] = 1.0 / (1.0 + std::exp(-s));
    }
    return grid;
}

/// t lambda'(t)/lambda(t) <= 2 + 1/μ - 1/ν on the grid (needs μ >= 1).
inline ConditionReport condition_4_8(const Kernel& kernel, const MuNu& mn) {
    if (mn.mu < 1.0) {
        throw Error(ErrorCode::RegimeError, "cond_4_8 needs mu >= 1");
    }
    ConditionReport report;
    report.bound = 2.0 + 1.0 / mn.mu - 1.0 / mn.nu;
    report.grid_points = kConditionGrid;
    report.finite_difference = kernel.is_custom();
    report.extreme = -std::numeric_limits<double>::infinity();
    for (double t : clustered_unit_grid(kConditionGrid)) {
        const double v = log_derivative(kernel, t);
        if (std::isnan(v)) {
            report.extreme = std::numeric_limits<double>::quiet_NaN();
            break;
        }
        report.extreme = std::max(report.extreme, v);
    }
    report.passed = report.extreme <= report.bound + kConditionSlack;
    return report;
}

/// lambda(1) = 0 and t lambda'' - lambda'/α >= 0 on the grid (needs α >= 1).
inline ConditionReport condition_4_9(const Kernel& kernel, double alpha) {
    if (alpha < 1.0) {
        throw Error(ErrorCode::RegimeError, "cond_4_9 needs alpha >= 1");
    }
    ConditionReport report;
    report.bound = 0.0;
    report.grid_points = kConditionGrid;
    report.finite_difference = kernel.is_custom();
    report.endpoint_ok = std::abs(lambda_at_one(kernel)) <= kConditionSlack;
    report.extreme = std::numeric_limits<double>::infinity();
    for (double t : clustered_unit_grid(kConditionGrid)) {
        const double v = t * eval_lambda_second(kernel, t) - eval_lambda_prime(kernel, t) / alpha;
        if (std::isnan(v)) {
            report.extreme = std::numeric_limits<double>::quiet_NaN();
            break;
        }
        report.extreme = std::min(report.extreme, v);
    }
    report.passed = report.endpoint_ok && report.extreme >= -kConditionSlack;
    return report;
}

struct RatioReport {
    bool passed = false;
    double worst_increase = 0.0;  ///< largest r(t_{k+1}) - r(t_k)
    double worst_t = 0.0;
    int grid_points = 0;

    explicit operator bool() const { return passed; }
};

/**
 * Monotonicity of
 *
 *   (-t Π'(t) + (1 - 1/μ) Π(t)) / ((1 + t)(1 - t)^{1+2δ})
 *
 * on a uniform 512-point interior grid, using -t Π'(t) = t^{1/ν - 1/μ} Λ_ν(t).
 * Passes when no consecutive increase exceeds 1e-9.
 */
inline double condition_4_1_ratio(const Kernel& kernel, const MuNu& mn, double delta, double t) {
    const double lam = capital_lambda(kernel, mn.nu, t, 1e-14);
    const double pi = capital_pi(kernel, mn, t, 1e-14);
    const double numerator = std::pow(t, 1.0 / mn.nu - 1.0 / mn.mu) * lam + (1.0 - 1.0 / mn.mu) * pi;
    return numerator / ((1.0 + t) * std::pow(1.0 - t, 1.0 + 2.0 * delta));
}

inline RatioReport condition_4_1(const Kernel& kernel, const MuNu& mn, double delta) {
    if (mn.mu < 1.0) {
        throw Error(ErrorCode::RegimeError, "cond_4_1 needs mu >= 1");
    }
    RatioReport report;
    report.grid_points = kRatioGrid;
    report.worst_increase = -std::numeric_limits<double>::infinity();
    double previous = 0.0;
    for (int k = 0; k < kRatioGrid; ++k) {
        const double t = (k + 0.5) / kRatioGrid;
        const double r = condition_4_1_ratio(kernel, mn, delta, t);
        if (k > 0 && r - previous > report.worst_increase) {
            report.worst_increase = r - previous;
            report.worst_t = t;
        }
        previous = r;
    }
    report.passed = report.worst_increase <= kConditionSlack;
    return report;
}

struct LimitReport {
    static constexpr std::array<double, 4> kPoints = {1e-2, 1e-3, 1e-4, 1e-5};
    std::array<double, 4> lambda_values{};  ///< t^{1/ν} Λ_ν(t)
    std::array<double, 4> pi_values{};      ///< t^{1/ν} Π_{μ,ν}(t)
    bool lambda_ok = false;
    bool pi_ok = false;
    bool passed = false;

    explicit operator bool() const { return passed; }
};

namespace detail {

inline bool decreasing_to_zero(const std::array<double, 4>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0) return false;
        if (i > 0 && !(v[i] < v[i - 1])) return false;
    }
    return true;
}

}  // namespace detail

/// t^{1/ν} Λ_ν(t) → 0 and t^{1/ν} Π(t) → 0, sampled at t = 1e-2 … 1e-5.
inline LimitReport check_limits(const Kernel& kernel, const MuNu& mn) {
    LimitReport report;
    for (std::size_t i = 0; i < LimitReport::kPoints.size(); ++i) {
        const double t = LimitReport::kPoints[i];
        const double w = std::pow(t, 1.0 / mn.nu);
        report.lambda_values[i] = w * capital_lambda(kernel, mn.nu, t);
        report.pi_values[i] = w * capital_pi(kernel, mn, t);
    }
    report.lambda_ok = detail::decreasing_to_zero(report.lambda_values);
    report.pi_ok = detail::decreasing_to_zero(report.pi_values);
    report.passed = report.lambda_ok && report.pi_ok;
    return report;
}

/**
 * Kernel-specific hypotheses of the catalog results: Komatu needs
 * a > p - 2 > -1; for γ = 0 the two-parameter kernel needs -1 < a <= 0 with
 * a = b or a < b <= 1 + 1/α. `applicable` is false for kernels with no
 * such hypothesis.
 */
struct KernelHypothesis {
    bool applicable = false;
    bool holds = false;
};

inline KernelHypothesis kernel_hypothesis(const Kernel& kernel, const MuNu& mn) {
    if (const auto* k = std::get_if<Komatu>(&kernel.variant())) {
        return {true, k->a > k->p - 2.0 && k->p - 2.0 > -1.0};
    }
    if (const auto* k = std::get_if<TwoParam>(&kernel.variant()); k && mn.is_gamma_zero()) {
        const double alpha = mn.nu;
        const bool a_range = k->a > -1.0 && k->a <= 0.0;
        const bool equal = std::abs(k->b - k->a) < kTwoParamMergeGap;
        const bool ordered = k->a < k->b && k->b <= 1.0 + 1.0 / alpha;
        return {true, a_range && (equal || ordered)};
    }
    return {false, false};
}

}  // namespace convexity
