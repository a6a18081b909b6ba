#pragma once

/**
 * @file sharp_beta.hpp
 * @brief The sharp constant beta from (beta - 1/2)/(1 - beta) = -∫ lambda q
 *
 * The relation is linear-fractional in beta, so beta = (1/2 - I)/(1 - I)
 * is obtained by direct inversion, never by root finding.
 */

#include "errors.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "qfunc.hpp"

#include <cmath>
#include <numbers>

namespace convexity {

struct BetaResult {
    double beta = 0.0;
    double integral_I = 0.0;
    QSpec spec;
    Kernel kernel = Kernel::alexander();
    double crosscheck_residual = 0.0;
    double quadrature_I = 0.0;
    double series_error = 0.0;
};

/// beta from I; I = 1 has no solution.
inline double beta_from_integral(double I) {
    if (!(I < 1.0)) throw Error(ErrorCode::DomainError, "∫λq must be below 1");
    return (0.5 - I) / (1.0 - I);
}

/// I from beta, the inverse Möbius map.
inline double integral_from_beta(double beta) { return (0.5 - beta) / (1.0 - beta); }

inline BetaResult sharp_beta(const Kernel& kernel, const ClassParams& params) {
    const MuNu mn = resolve_mu_nu(params);
    BetaResult out;
    out.spec = QSpec{mn, params.delta};
    out.kernel = kernel;
    const auto I = lambda_q_integral(kernel, out.spec);
    out.integral_I = I.value;
    out.quadrature_I = I.quadrature_value;
    out.crosscheck_residual = I.residual;
    out.series_error = I.series_error;
    out.beta = beta_from_integral(I.value);
    return out;
}

/// beta = (1/2 + R)/(1 + R), R = (δπ²/12 - ln 2)/(1 - δ): the Alexander kernel with μ = ν = 1.
inline double alexander_closed_form(double delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1/2]");
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double R = (delta * pi2 / 12.0 - std::numbers::ln2) / (1.0 - delta);
    return (0.5 + R) / (1.0 + R);
}

}  // namespace convexity
