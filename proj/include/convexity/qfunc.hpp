#pragma once

/**
 * @file qfunc.hpp
 * @brief The auxiliary function q(t) and the integral I = ∫ lambda q
 *
 * q solves the initial value problem attached to the (mu, nu) factorization
 * with q(0) = 1. Three representations are provided:
 *
 *   q_integral        (1/μν) ∫∫ g(s w t) s^{1/μ-1} w^{1/ν-1} ds dw
 *   q_alpha_integral  (1/α)  ∫ g(s t) s^{1/α-1} ds                (γ = 0)
 *   q_series          1 + (1/(1-δ)) Σ (-1)^n (n+1)(n+1-δ) t^n / D_n
 *
 * with g(x) = ((1-δ) - (1+δ)x) / ((1-δ)(1+x)^3) and D_n = (nν+1)(nμ+1).
 */

#include "acceleration.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace convexity {

struct QSpec {
    MuNu mu_nu;
    double delta = 0.0;

    void validate() const {
        if (!std::isfinite(delta) || delta < 0.0 || delta > 0.5) {
            throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1/2]");
        }
        if (!(mu_nu.nu > 0.0) || mu_nu.mu < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "q needs nu > 0 and mu >= 0");
        }
    }
};

/// g(x) = ((1-δ) - (1+δ)x) / ((1-δ)(1+x)^3), the integrand core of q.
inline double q_core(double delta, double x) {
    const double p = 1.0 + x;
    return ((1.0 - delta) - (1.0 + delta) * x) / ((1.0 - delta) * p * p * p);
}

/// Coefficient (n+1)(n+1-δ) / ((1-δ) D_n) of (-t)^n in q.
inline double q_coefficient(const QSpec& spec, double n) {
    return (n + 1.0) * (n + 1.0 - spec.delta) / ((1.0 - spec.delta) * spec.mu_nu.denominator(n));
}

inline void require_closed_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::DomainError, "t must lie in [0, 1]");
    }
}

/// q_α(t) by 1D quadrature after s = u^α.
inline double q_alpha_integral(double alpha, double delta, double t, double tol = 1e-13) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "q_alpha needs alpha > 0");
    QSpec{{0.0, alpha}, delta}.validate();
    require_closed_unit(t);
    if (t == 0.0) return 1.0;
    auto r = quad::integrate_power_weighted([&](double s) { return q_core(delta, s * t); }, alpha,
                                            alpha * tol);
    return r.value / alpha;
}

/// q(t) by weighted 2D quadrature; μ = 0 dispatches to q_alpha_integral.
inline double q_integral(const QSpec& spec, double t, double tol = 1e-12) {
    spec.validate();
    require_closed_unit(t);
    if (spec.mu_nu.is_gamma_zero()) return q_alpha_integral(spec.mu_nu.nu, spec.delta, t, tol);
    if (t == 0.0) return 1.0;
    const double scale = spec.mu_nu.mu * spec.mu_nu.nu;
    auto r = quad::integrate_2d_weighted(
        [&](double s, double w) { return q_core(spec.delta, s * w * t); }, spec.mu_nu.mu,
        spec.mu_nu.nu, scale * tol);
    return r.value / scale;
}

struct SeriesValue {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms = 0;
    bool truncation_warning = false;  ///< error estimate above 1e-9
};

inline constexpr double kSeriesWarnLevel = 1e-9;

/**
 * q(t) from its power series.
 *
 * For t <= 0.9 the first n_terms terms are summed directly and the last
 * omitted term bounds the error. Above 0.9 (including t = 1, where the sum
 * is understood in the Abel sense) the Euler transform takes over.
 */
inline SeriesValue q_series(const QSpec& spec, double t, std::size_t n_terms = 2000) {
    spec.validate();
    require_closed_unit(t);
    SeriesValue out;
    if (t > 0.9) {
        const double lt = std::log(t);
        auto s = euler_alternating_sum(
            [&](std::size_t n) {
                const double nd = static_cast<double>(n);
                return q_coefficient(spec, nd) * std::exp(nd * lt);
            },
            0);
        out.value = s.value;
        out.error_estimate = s.error_estimate;
        out.terms = s.terms_used;
    } else {
        double sum = 0.0;
        double power = 1.0;
        double scale = 0.0;
        for (std::size_t n = 0; n < n_terms; ++n) {
            const double term = q_coefficient(spec, static_cast<double>(n)) * power;
            sum += (n % 2 == 0) ? term : -term;
            scale = std::max(scale, term);
            power *= t;
        }
        const double next = q_coefficient(spec, static_cast<double>(n_terms)) * power;
        out.value = sum;
        out.error_estimate = next + 4.0 * std::numeric_limits<double>::epsilon() * scale;
        out.terms = n_terms;
    }
    out.truncation_warning = out.error_estimate > kSeriesWarnLevel;
    return out;
}

struct LambdaQIntegral {
    double value = 0.0;            ///< termwise moment series
    double series_error = 0.0;     ///< Euler error estimate of the series
    double quadrature_value = 0.0; ///< ∫ lambda q by direct quadrature
    double residual = 0.0;         ///< |series - quadrature|
};

inline constexpr double kCrossCheckLimit = 1e-6;

/// I by the termwise series 1 + (1/(1-δ)) Σ_{n≥1} (-1)^n (n+1)(n+1-δ) τ_n / D_n.
inline AlternatingSum lambda_q_series(const Kernel& kernel, const QSpec& spec) {
    auto s = euler_alternating_sum(
        [&](std::size_t n) {
            return q_coefficient(spec, static_cast<double>(n)) * moment(kernel, static_cast<int>(n));
        },
        1);
    s.value += 1.0;
    return s;
}

/// I by quadrature of lambda against q_integral.
inline double lambda_q_quadrature(const Kernel& kernel, const QSpec& spec, double tol = 1e-11) {
    return integrate_against(
               kernel, [&](double t) { return q_integral(spec, t, 0.1 * tol); }, 0.0, 1.0, tol)
        .value;
}

/**
 * I = ∫₀¹ lambda(t) q(t) dt computed both ways. The series value is
 * returned; CrossCheckFailure is thrown if the routes differ by more
 * than 1e-6.
 */
inline LambdaQIntegral lambda_q_integral(const Kernel& kernel, const QSpec& spec) {
    spec.validate();
    const auto series = lambda_q_series(kernel, spec);
    LambdaQIntegral out;
    out.value = series.value;
    out.series_error = series.error_estimate;
    out.quadrature_value = lambda_q_quadrature(kernel, spec);
    out.residual = std::abs(out.value - out.quadrature_value);
    if (!(out.residual <= kCrossCheckLimit)) {
        throw Error(ErrorCode::CrossCheckFailure,
                    "series and quadrature values of ∫λq differ by " + std::to_string(out.residual));
    }
    return out;
}

}  // namespace convexity
