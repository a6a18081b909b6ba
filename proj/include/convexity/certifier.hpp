#pragma once

/**
 * @file certifier.hpp
 * @brief Numerical certification of V_λ(W_β(α,γ)) ⊂ K(δ)
 *
 * The checks are:
 *   - Re(1 + zF''/F') ≥ δ on a circle |z| = r for the transform F of the
 *     extremal function at the sharp β,
 *   - (zF')'/F' = δ at z = -1 (sharpness), by accelerated alternating sums,
 *   - the duality functional M_Π(h_δ) ≥ 0 on a sample of (z, ε),
 *   - the admissibility conditions on λ.
 *
 * Everything is sampled on finite grids; a certificate is evidence, and it
 * records the grids and tolerances needed to reproduce it.
 */

#include "acceleration.hpp"
#include "admissibility.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "power_series.hpp"
#include "qfunc.hpp"
#include "quadrature.hpp"
#include "sharp_beta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convexity {

inline constexpr double kZeroDerivative = 1e-12;

/// Re(1 + zF''(z)/F'(z)) at z = r e^{2πik/n_theta}, k = 0 … n_theta-1.
inline std::vector<double> convexity_quotient_curve(const PowerSeries& F, double r,
                                                    std::size_t n_theta) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "radius must lie in (0, 1)");
    if (n_theta == 0) throw Error(ErrorCode::InvalidArgument, "n_theta must be positive");
    const std::size_t N = F.truncation();
    std::vector<complex> d1(N), d2(N);
    for (std::size_t k = 0; k < N; ++k) {
        d1[k] = static_cast<double>(k + 1) * F[k + 1];
        d2[k] = static_cast<double>((k + 2) * (k + 1)) * F[k + 2];
    }
    std::vector<double> values(n_theta);
    std::vector<char> degenerate(n_theta, 0);
    parallel_for(n_theta, [&](std::size_t j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / n_theta;
        const complex z = std::polar(r, theta);
        complex f1{}, f2{};
        for (std::size_t k = N; k-- > 0;) {
            f1 = f1 * z + d1[k];
            f2 = f2 * z + d2[k];
        }
        if (std::abs(f1) < kZeroDerivative) {
            degenerate[j] = 1;
            return;
        }
        values[j] = (1.0 + z * f2 / f1).real();
    });
    for (std::size_t j = 0; j < n_theta; ++j) {
        if (degenerate[j]) {
            throw Error(ErrorCode::ZeroDerivative,
                        "|F'| < 1e-12 at grid point " + std::to_string(j));
        }
    }
    return values;
}

struct ConvexityScan {
    double min_re = 0.0;
    double theta_at_min = 0.0;
    std::size_t index_at_min = 0;
};

inline ConvexityScan convexity_order_scan(const PowerSeries& F, double r, std::size_t n_theta) {
    const auto values = convexity_quotient_curve(F, r, n_theta);
    const auto it = std::min_element(values.begin(), values.end());
    ConvexityScan out;
    out.index_at_min = static_cast<std::size_t>(it - values.begin());
    out.min_re = *it;
    out.theta_at_min = 2.0 * std::numbers::pi * static_cast<double>(out.index_at_min) / n_theta;
    return out;
}

/// min over the circle |z| = r of Re(1 + zF''/F').
inline double convexity_order_min(const PowerSeries& F, double r, std::size_t n_theta) {
    return convexity_order_scan(F, r, n_theta).min_re;
}

struct SharpnessResult {
    double ratio = 0.0;
    double error_estimate = 0.0;
    bool divergence_warning = false;  ///< acceleration error above 1e-6
};

inline constexpr double kSharpnessDivergence = 1e-6;

/**
 * (zF')'(-1)/F'(-1) for F = V_λ of the extremal function:
 *
 *   (1 + 2(1-β) Σ (-1)^n (n+1)^2 τ_n/D_n) / (1 + 2(1-β) Σ (-1)^n (n+1) τ_n/D_n)
 *
 * with both sums over n ≥ 1 summed by the Euler transform.
 */
inline SharpnessResult sharpness_at_minus_one(const Kernel& kernel, const MuNu& mn, double beta) {
    if (!(beta < 1.0)) throw Error(ErrorCode::InvalidArgument, "sharpness needs beta < 1");
    auto term = [&](std::size_t n, int power) {
        const double nd = static_cast<double>(n);
        return std::pow(nd + 1.0, power) * moment(kernel, static_cast<int>(n)) / mn.denominator(nd);
    };
    const auto A = euler_alternating_sum([&](std::size_t n) { return term(n, 2); }, 1);
    const auto B = euler_alternating_sum([&](std::size_t n) { return term(n, 1); }, 1);
    const double s = 2.0 * (1.0 - beta);
    const double num = 1.0 + s * A.value;
    const double den = 1.0 + s * B.value;
    SharpnessResult out;
    out.ratio = num / den;
    out.error_estimate =
        s * (A.error_estimate + std::abs(out.ratio) * B.error_estimate) / std::abs(den);
    out.divergence_warning = !(out.error_estimate <= kSharpnessDivergence);
    return out;
}

struct MembershipWitness {
    double phase = 0.0;   ///< φ with Re e^{iφ}(H - β) > 0 on the sample
    double margin = 0.0;  ///< min_k Re e^{iφ}(H(z_k) - β)
};

/**
 * Searches φ maximizing min_k Re(e^{iφ}(H(r e^{iθ_k}) - β)) by a 720-point
 * scan refined by golden-section search. Returns the witness when the
 * maximum is positive.
 */
inline std::optional<MembershipWitness> membership_W(const PowerSeries& f,
                                                     const ClassParams& params, double beta,
                                                     double r, std::size_t n_theta) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "radius must lie in (0, 1)");
    const PowerSeries H = operator_H(f, params);
    std::vector<complex> w(n_theta);
    parallel_for(n_theta, [&](std::size_t k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / n_theta;
        w[k] = eval(H, std::polar(r, theta)).value - beta;
    });
    auto margin = [&](double phi) {
        const complex rot = std::polar(1.0, phi);
        double m = std::numeric_limits<double>::infinity();
        for (const auto& wk : w) m = std::min(m, (rot * wk).real());
        return m;
    };

    constexpr int scan = 720;
    const double step = 2.0 * std::numbers::pi / scan;
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan; ++i) {
        const double v = margin(i * step);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = (best - 1) * step;
    double hi = (best + 1) * step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = margin(x1);
    double f2 = margin(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = margin(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = margin(x1);
        }
    }
    double phase = best * step;
    double value = best_value;
    const double refined = 0.5 * (lo + hi);
    if (const double v = margin(refined); v > value) {
        value = v;
        phase = refined;
    }
    if (!(value > 0.0)) return std::nullopt;
    phase = std::fmod(phase, 2.0 * std::numbers::pi);
    if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    return MembershipWitness{phase, value};
}

/// h_δ(z) = z(1 + ((ε+2δ-1)/(2-2δ)) z)/(1-z)^2.
inline complex h_delta(complex z, complex epsilon, double delta) {
    const complex k = (epsilon + 2.0 * delta - 1.0) / (2.0 - 2.0 * delta);
    const complex d = 1.0 - z;
    return z * (1.0 + k * z) / (d * d);
}

/// h_δ'(w) = ((1-δ) + (ε+δ)w) / ((1-δ)(1-w)^3).
inline complex h_delta_prime(complex w, complex epsilon, double delta) {
    const complex d = 1.0 - w;
    return ((1.0 - delta) + (epsilon + delta) * w) / ((1.0 - delta) * d * d * d);
}

/// The functional is affine in ε: M(z, ε) = Re P(z) + Re(ε Q(z)).
struct DualityParts {
    complex P;
    complex Q;
};

inline constexpr double kDualityTolerance = 1e-8;

/**
 * P(z) = ∫ w Π [h_δ'(tz)|_{ε=0} - h_1'(-t)] dt and Q(z) = ∫ w Π tz/((1-δ)(1-tz)^3) dt
 * for each z, with w(t) = t^{1/μ-1} (t^{1/α-1} when γ = 0). The weight is
 * absorbed by t = u^m, m = 2 max(1, μ, ν), and all z share the Π samples.
 */
inline std::vector<DualityParts> duality_parts(const Kernel& kernel, const MuNu& mn, double delta,
                                               const std::vector<complex>& zs,
                                               double tol = kDualityTolerance) {
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1/2]");
    }
    for (const auto& z : zs) {
        if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::DomainError, "duality needs |z| < 1");
    }
    const double rho = mn.is_gamma_zero() ? mn.nu : mn.mu;
    const double m = 2.0 * std::max({1.0, mn.mu, mn.nu});
    const double expo = m / rho - 1.0;
    const std::size_t K = zs.size();

    auto integrand = [&](double u) {
        std::vector<complex> out(2 * K);
        const double t = std::pow(u, m);
        if (!(t > 0.0) || !(t < 1.0)) return out;
        const double weight = m * std::pow(u, expo) * capital_pi(kernel, mn, t);
        const double g = h_delta_prime(-t, 1.0, delta).real();
        for (std::size_t k = 0; k < K; ++k) {
            const complex w = t * zs[k];
            const complex d = 1.0 - w;
            const complex cube = (1.0 - delta) * d * d * d;
            out[2 * k] = weight * (((1.0 - delta) + delta * w) / cube - g);
            out[2 * k + 1] = weight * (w / cube);
        }
        return out;
    };
    const auto r = quad::integrate_basic(integrand, 0.0, 1.0, tol);
    std::vector<DualityParts> parts(K);
    for (std::size_t k = 0; k < K; ++k) parts[k] = {r.value[2 * k], r.value[2 * k + 1]};
    return parts;
}

/// M_Π(h_δ) at one (z, ε).
inline double duality_functional(const Kernel& kernel, const MuNu& mn, double delta, complex z,
                                 complex epsilon) {
    if (std::abs(std::abs(epsilon) - 1.0) > kUnitModulusTolerance) {
        throw Error(ErrorCode::DomainError, "epsilon must have unit modulus");
    }
    const auto parts = duality_parts(kernel, mn, delta, {z});
    return parts[0].P.real() + (epsilon * parts[0].Q).real();
}

struct DualitySample {
    double min = std::numeric_limits<double>::infinity();
    std::size_t samples = 0;
    complex z_at_min;
    complex epsilon_at_min;
};

/**
 * min of M over z = r e^{2πj/n_z} for each r in radii and ε = e^{2πi l/n_eps}.
 * One batched integral per radius; radii run in parallel.
 */
inline DualitySample duality_sample(const Kernel& kernel, const MuNu& mn, double delta,
                                    const std::vector<double>& radii, std::size_t n_z,
                                    std::size_t n_eps) {
    std::vector<std::vector<complex>> zs(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = 0; j < n_z; ++j) {
            zs[i].push_back(std::polar(radii[i], 2.0 * std::numbers::pi * static_cast<double>(j) / n_z));
        }
    }
    std::vector<std::vector<DualityParts>> parts(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) { parts[i] = duality_parts(kernel, mn, delta, zs[i]); });

    DualitySample out;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = 0; j < n_z; ++j) {
            for (std::size_t l = 0; l < n_eps; ++l) {
                const complex eps = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(l) / n_eps);
                const double v = parts[i][j].P.real() + (eps * parts[i][j].Q).real();
                ++out.samples;
                if (v < out.min) {
                    out.min = v;
                    out.z_at_min = zs[i][j];
                    out.epsilon_at_min = eps;
                }
            }
        }
    }
    return out;
}

struct CertifyConfig {
    double radius = 0.995;
    std::size_t n_theta = 4096;
    std::size_t series_n = 0;  ///< 0 selects required_truncation(radius)
    std::size_t n_z = 16;
    std::size_t n_eps = 16;
    std::vector<double> z_radii{0.5, 0.9, 0.99};
    double tol_grid = 1e-3;
    double tol_sharp = 1e-4;
    double tol_duality = 1e-6;
    double beta_shift = 0.0;  ///< added to the sharp β before the grid and sharpness checks
    bool run_duality = true;
    bool run_admissibility = true;
};

struct Admissibility {
    std::optional<bool> cond_4_8;
    std::optional<bool> cond_4_9;
    std::optional<bool> cond_4_1;
    bool limits = false;
    std::optional<bool> kernel_hypothesis;
};

struct Certificate {
    bool pass = false;
    Kernel kernel = Kernel::alexander();
    ClassParams params;
    MuNu mu_nu;
    double beta = std::numeric_limits<double>::quiet_NaN();
    double integral_I = std::numeric_limits<double>::quiet_NaN();
    double crosscheck_residual = std::numeric_limits<double>::quiet_NaN();
    Admissibility admissibility;
    double grid_radius = 0.0;
    std::size_t n_theta = 0;
    double grid_min_re = std::numeric_limits<double>::quiet_NaN();
    double grid_theta_min = std::numeric_limits<double>::quiet_NaN();
    double sharpness_ratio = std::numeric_limits<double>::quiet_NaN();
    double sharpness_residual = std::numeric_limits<double>::quiet_NaN();
    std::optional<DualitySample> duality;
    std::size_t series_N = 0;
    CertifyConfig config;
    std::vector<std::string> reason_codes;
    bool numerical_failure = false;
};

namespace detail {

inline void record_failure(Certificate& cert, std::string_view stage, const Error& e) {
    if (is_parameter_error(e.code())) throw e;
    cert.numerical_failure = true;
    cert.reason_codes.push_back(std::string(stage) + ":" + std::string(to_string(e.code())));
}

}  // namespace detail

/**
 * Full pipeline: (μ, ν), sharp β, admissibility, the grid and sharpness
 * checks on the extremal transform, and the sampled duality functional.
 *
 * pass = grid_min_re ≥ δ - tol_grid and sharpness_residual ≤ tol_sharp.
 * Admissibility and duality outcomes are reported through their fields and
 * reason codes. Parameter errors propagate; numerical failures are recorded
 * as "<stage>:<code>" reasons on a failed certificate.
 */
inline Certificate certify(const Kernel& kernel, const ClassParams& params,
                           const CertifyConfig& config = {}) {
    params.validate();
    Certificate cert;
    cert.kernel = kernel;
    cert.params = params;
    cert.config = config;
    cert.mu_nu = resolve_mu_nu(params);
    const MuNu mn = cert.mu_nu;
    cert.grid_radius = config.radius;
    cert.n_theta = config.n_theta;
    cert.series_N = config.series_n ? config.series_n : required_truncation(config.radius);

    try {
        const auto b = sharp_beta(kernel, params);
        cert.beta = b.beta;
        cert.integral_I = b.integral_I;
        cert.crosscheck_residual = b.crosscheck_residual;
    } catch (const Error& e) {
        detail::record_failure(cert, "beta", e);
        return cert;
    }
    const double beta = cert.beta + config.beta_shift;

    if (config.run_admissibility) {
        auto& adm = cert.admissibility;
        try {
            if (mn.mu >= 1.0) {
                adm.cond_4_8 = condition_4_8(kernel, mn).passed;
                adm.cond_4_1 = condition_4_1(kernel, mn, params.delta).passed;
            }
            if (mn.is_gamma_zero() && params.alpha >= 1.0) {
                adm.cond_4_9 = condition_4_9(kernel, params.alpha).passed;
            }
            adm.limits = check_limits(kernel, mn).passed;
            if (const auto h = kernel_hypothesis(kernel, mn); h.applicable) {
                adm.kernel_hypothesis = h.holds;
            }
        } catch (const Error& e) {
            detail::record_failure(cert, "admissibility", e);
        }
        if (adm.cond_4_8 == false) cert.reason_codes.emplace_back("cond_4_8_failed");
        if (adm.cond_4_9 == false) cert.reason_codes.emplace_back("cond_4_9_failed");
        if (adm.cond_4_1 == false) cert.reason_codes.emplace_back("cond_4_1_failed");
        if (!adm.limits) cert.reason_codes.emplace_back("limits_failed");
        if (adm.kernel_hypothesis == false) cert.reason_codes.emplace_back("kernel_hypothesis_failed");
    }

    bool grid_ok = false;
    try {
        const PowerSeries F = apply_transform(kernel, extremal_function(mn, beta, cert.series_N));
        const auto scan = convexity_order_scan(F, config.radius, config.n_theta);
        cert.grid_min_re = scan.min_re;
        cert.grid_theta_min = scan.theta_at_min;
        grid_ok = scan.min_re >= params.delta - config.tol_grid;
        if (!grid_ok) cert.reason_codes.emplace_back("grid_below_delta");
    } catch (const Error& e) {
        detail::record_failure(cert, "grid", e);
    }

    bool sharp_ok = false;
    try {
        const auto s = sharpness_at_minus_one(kernel, mn, beta);
        cert.sharpness_ratio = s.ratio;
        cert.sharpness_residual = std::abs(s.ratio - params.delta);
        sharp_ok = cert.sharpness_residual <= config.tol_sharp;
        if (!sharp_ok) cert.reason_codes.emplace_back("sharpness_residual_exceeded");
        if (s.divergence_warning) cert.reason_codes.emplace_back("sharpness_divergence_warning");
    } catch (const Error& e) {
        detail::record_failure(cert, "sharpness", e);
    }

    if (config.run_duality) {
        try {
            cert.duality = duality_sample(kernel, mn, params.delta, config.z_radii, config.n_z,
                                          config.n_eps);
            if (cert.duality->min < -config.tol_duality) {
                cert.reason_codes.emplace_back("duality_functional_negative");
            }
        } catch (const Error& e) {
            detail::record_failure(cert, "duality", e);
        }
    }

    cert.pass = grid_ok && sharp_ok;
    return cert;
}

}  // namespace convexity
