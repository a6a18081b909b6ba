#pragma once

/**
 * @file params.hpp
 * @brief Class parameters (alpha, gamma, delta) and the (mu, nu) factorization
 *
 * The class W_beta(alpha, gamma) is defined through the operator
 *
 *   (1 - alpha + 2 gamma) f/z + (alpha - 2 gamma) f' + gamma z f'',
 *
 * which factors into two first-order operators once mu + nu = alpha - gamma
 * and mu nu = gamma. By convention mu is the smaller root; gamma = 0 gives
 * mu = 0, nu = alpha.
 */

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace convexity {

struct ClassParams {
    double alpha = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    /// Throws InvalidArgument unless alpha, gamma >= 0 and delta ∈ [0, 1/2].
    void validate() const {
        if (!std::isfinite(alpha) || alpha < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "alpha must be a finite value >= 0");
        }
        if (!std::isfinite(gamma) || gamma < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "gamma must be a finite value >= 0");
        }
        if (!std::isfinite(delta) || delta < 0.0 || delta > 0.5) {
            throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1/2]");
        }
    }
};

struct MuNu {
    double mu = 0.0;
    double nu = 0.0;

    bool is_gamma_zero() const { return mu == 0.0; }
    /// (n nu + 1)(n mu + 1), the denominator shared by psi, q and the extremal function.
    double denominator(double n) const { return (n * nu + 1.0) * (n * mu + 1.0); }
};

/// Boundary slack for (alpha - gamma)^2 - 4 gamma.
inline constexpr double kDiscriminantSlack = 1e-12;

/**
 * Roots of x^2 - (alpha - gamma) x + gamma = 0 with mu <= nu.
 *
 * Throws NegativeDiscriminant when no real factorization exists and
 * InvalidArgument when the real roots are negative (alpha - gamma < 0).
 */
inline MuNu resolve_mu_nu(const ClassParams& params) {
    params.validate();
    const double alpha = params.alpha;
    const double gamma = params.gamma;
    if (gamma == 0.0) {
        return {0.0, alpha};
    }
    // alpha = 1 + 2 gamma: (mu - 1)(1 - nu) = 0, roots are exactly 1 and gamma.
    if (alpha == 1.0 + 2.0 * gamma) {
        return {std::min(1.0, gamma), std::max(1.0, gamma)};
    }
    const double sum = alpha - gamma;
    double disc = sum * sum - 4.0 * gamma;
    if (disc < -kDiscriminantSlack) {
        throw Error(ErrorCode::NegativeDiscriminant,
                    "(alpha - gamma)^2 < 4 gamma: no real (mu, nu) factorization");
    }
    if (sum <= 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "alpha - gamma must be positive for nonnegative (mu, nu)");
    }
    disc = std::max(disc, 0.0);
    const double nu = 0.5 * (sum + std::sqrt(disc));
    return {gamma / nu, nu};
}

struct RegimeReport {
    bool theorem_4_2_applicable = false;  ///< nu >= mu >= 1
    bool theorem_4_3_applicable = false;  ///< mu = 0, nu = alpha >= 1
};

inline RegimeReport validate_regime(const MuNu& mn) {
    return {mn.mu >= 1.0 && mn.nu >= mn.mu, mn.mu == 0.0 && mn.nu >= 1.0};
}

}  // namespace convexity
