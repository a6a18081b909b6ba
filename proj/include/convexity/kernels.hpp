#pragma once

/**
 * @file kernels.hpp
 * @brief Weight functions lambda(t) of the transform V_lambda and their moments
 *
 * V_lambda(f)(z) = ∫₀¹ lambda(t) f(tz)/t dt for a nonnegative weight with
 * ∫₀¹ lambda = 1. The catalog covers
 *
 *   Bernardi   (1+c) t^c                                    c > -1
 *   TwoParam   (a+1)(b+1) t^a (1 - t^{b-a}) / (b-a)          a, b > -1
 *              (a+1)^2 t^a log(1/t)                          (b = a)
 *   Komatu     (1+a)^p / Gamma(p) · t^a log(1/t)^{p-1}        a > -1, p > 0
 *
 * plus user-supplied samplers. Catalog kernels carry closed-form moments
 * and derivatives; custom kernels fall back to quadrature and central
 * differences.
 */

#include "errors.hpp"
#include "params.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace convexity {

struct Bernardi {
    double c = 0.0;
};

struct TwoParam {
    double a = 0.0;
    double b = 0.0;
};

struct Komatu {
    double a = 0.0;
    double p = 1.0;
};

struct Custom {
    std::function<double(double)> sampler;
    std::function<double(int)> moment_hint;  ///< optional closed form for τ_n
    /// lambda(t) ~ t^left_exponent as t → 0⁺ (absorbed by substitution)
    double left_exponent = 0.0;
    /// lambda(t) ~ (1-t)^right_exponent as t → 1⁻
    double right_exponent = 0.0;
};

/// |b - a| below this evaluates the logarithmic TwoParam branch.
inline constexpr double kTwoParamMergeGap = 1e-8;

class Kernel {
public:
    using Variant = std::variant<Bernardi, TwoParam, Komatu, Custom>;

    static Kernel bernardi(double c) {
        if (!std::isfinite(c) || c <= -1.0) {
            throw Error(ErrorCode::InvalidArgument, "Bernardi kernel needs c > -1");
        }
        return Kernel(Bernardi{c});
    }
    static Kernel alexander() { return bernardi(0.0); }
    static Kernel libera() { return bernardi(1.0); }

    static Kernel two_param(double a, double b) {
        if (!std::isfinite(a) || !std::isfinite(b) || a <= -1.0 || b <= -1.0) {
            throw Error(ErrorCode::InvalidArgument, "two-parameter kernel needs a, b > -1");
        }
        return Kernel(TwoParam{a, b});
    }

    static Kernel komatu(double a, double p) {
        if (!std::isfinite(a) || a <= -1.0) {
            throw Error(ErrorCode::InvalidArgument, "Komatu kernel needs a > -1");
        }
        if (!std::isfinite(p) || p <= 0.0) {
            throw Error(ErrorCode::InvalidArgument, "Komatu kernel needs p > 0");
        }
        return Kernel(Komatu{a, p});
    }

    /// Custom sampler; normalization is checked by quadrature (1e-10).
    static Kernel custom(Custom spec);

    const Variant& variant() const { return v_; }
    bool is_custom() const { return std::holds_alternative<Custom>(v_); }

    std::string_view kind() const {
        return std::visit(
            [](const auto& k) -> std::string_view {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Bernardi>) return "bernardi";
                else if constexpr (std::is_same_v<K, TwoParam>) return "two_param";
                else if constexpr (std::is_same_v<K, Komatu>) return "komatu";
                else return "custom";
            },
            v_);
    }

    /// lambda(t) ~ t^e as t → 0⁺ (logarithmic factors ignored).
    double left_exponent() const {
        return std::visit(
            [](const auto& k) -> double {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Bernardi>) return k.c;
                else if constexpr (std::is_same_v<K, TwoParam>) return std::min(k.a, k.b);
                else if constexpr (std::is_same_v<K, Komatu>) return k.a;
                else return k.left_exponent;
            },
            v_);
    }

    /// lambda(t) ~ (1-t)^e as t → 1⁻.
    double right_exponent() const {
        return std::visit(
            [](const auto& k) -> double {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Bernardi>) return 0.0;
                else if constexpr (std::is_same_v<K, TwoParam>) return 1.0;
                else if constexpr (std::is_same_v<K, Komatu>) return k.p - 1.0;
                else return k.right_exponent;
            },
            v_);
    }

private:
    explicit Kernel(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

namespace detail {

inline double komatu_scale(const Komatu& k) {
    return std::exp(k.p * std::log1p(k.a) - std::lgamma(k.p));
}

// (1 - t^d)/d for t in (0,1), continuous through d = 0 (→ log(1/t)).
inline double one_minus_power_over(double t, double d) {
    const double lt = std::log(t);
    if (d == 0.0) return -lt;
    return -std::expm1(d * lt) / d;
}

inline void require_open_unit(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw Error(ErrorCode::DomainError, "t must lie in (0, 1), got " + std::to_string(t));
    }
}

inline double custom_step(double t) { return std::min({1e-6, 0.5 * t, 0.5 * (1.0 - t)}); }

}  // namespace detail

/// lambda(t) for 0 < t < 1.
namespace detail {

// lambda(t) given lt = log t, so callers near t = 1 can supply log1p(-(1 - t)).
inline double lambda_with_log(const Kernel& kernel, double t, double lt) {
    return std::visit(
        [t, lt](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return (1.0 + k.c) * std::exp(k.c * lt);
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                const double d = k.b - k.a;
                if (std::abs(d) < kTwoParamMergeGap) {
                    return (k.a + 1.0) * (k.a + 1.0) * std::exp(k.a * lt) * -lt;
                }
                const double scale = (k.a + 1.0) * (k.b + 1.0);
                return scale * std::exp(k.a * lt) * -std::expm1(d * lt) / d;
            } else if constexpr (std::is_same_v<K, Komatu>) {
                return komatu_scale(k) * std::exp(k.a * lt) * std::pow(-lt, k.p - 1.0);
            } else {
                return k.sampler(t);
            }
        },
        kernel.variant());
}

}  // namespace detail

inline double eval_lambda(const Kernel& kernel, double t) {
    detail::require_open_unit(t);
    return detail::lambda_with_log(kernel, t, std::log(t));
}

/// lambda'(t); central differences (h ≤ 1e-6) for custom kernels.
inline double eval_lambda_prime(const Kernel& kernel, double t) {
    detail::require_open_unit(t);
    return std::visit(
        [&kernel, t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return (1.0 + k.c) * k.c * std::pow(t, k.c - 1.0);
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                const double d = k.b - k.a;
                if (std::abs(d) < kTwoParamMergeGap) {
                    const double scale = (k.a + 1.0) * (k.a + 1.0);
                    return scale * std::pow(t, k.a - 1.0) * (k.a * std::log(1.0 / t) - 1.0);
                }
                const double scale = (k.a + 1.0) * (k.b + 1.0);
                return scale * std::pow(t, k.a - 1.0) *
                       (k.a * detail::one_minus_power_over(t, d) - std::pow(t, d));
            } else if constexpr (std::is_same_v<K, Komatu>) {
                const double L = -std::log(t);
                return detail::komatu_scale(k) * std::pow(t, k.a - 1.0) * std::pow(L, k.p - 2.0) *
                       (k.a * L - (k.p - 1.0));
            } else {
                const double h = detail::custom_step(t);
                return (eval_lambda(kernel, t + h) - eval_lambda(kernel, t - h)) / (2.0 * h);
            }
        },
        kernel.variant());
}

/// lambda''(t); second central difference for custom kernels.
inline double eval_lambda_second(const Kernel& kernel, double t) {
    detail::require_open_unit(t);
    return std::visit(
        [&kernel, t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return (1.0 + k.c) * k.c * (k.c - 1.0) * std::pow(t, k.c - 2.0);
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                const double a = k.a;
                const double d = k.b - k.a;
                if (std::abs(d) < kTwoParamMergeGap) {
                    const double L = std::log(1.0 / t);
                    return (a + 1.0) * (a + 1.0) * std::pow(t, a - 2.0) *
                           ((a - 1.0) * (a * L - 1.0) - a);
                }
                const double scale = (a + 1.0) * (k.b + 1.0);
                return scale * std::pow(t, a - 2.0) *
                       (a * (a - 1.0) * detail::one_minus_power_over(t, d) -
                        (a + k.b - 1.0) * std::pow(t, d));
            } else if constexpr (std::is_same_v<K, Komatu>) {
                const double a = k.a;
                const double p = k.p;
                const double L = -std::log(t);
                const double Lp1 = std::pow(L, p - 1.0);
                const double Lp2 = std::pow(L, p - 2.0);
                const double Lp3 = std::pow(L, p - 3.0);
                return detail::komatu_scale(k) * std::pow(t, a - 2.0) *
                       ((a - 1.0) * (a * Lp1 - (p - 1.0) * Lp2) - a * (p - 1.0) * Lp2 +
                        (p - 1.0) * (p - 2.0) * Lp3);
            } else {
                const double h = detail::custom_step(t);
                return (eval_lambda(kernel, t + h) - 2.0 * eval_lambda(kernel, t) +
                        eval_lambda(kernel, t - h)) /
                       (h * h);
            }
        },
        kernel.variant());
}

/// t lambda'(t) / lambda(t).
inline double log_derivative(const Kernel& kernel, double t) {
    detail::require_open_unit(t);
    return std::visit(
        [&kernel, t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return k.c;
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                const double d = k.b - k.a;
                if (std::abs(d) < kTwoParamMergeGap) return k.a - 1.0 / std::log(1.0 / t);
                return k.a - std::pow(t, d) / detail::one_minus_power_over(t, d);
            } else if constexpr (std::is_same_v<K, Komatu>) {
                return k.a - (k.p - 1.0) / std::log(1.0 / t);
            } else {
                return t * eval_lambda_prime(kernel, t) / eval_lambda(kernel, t);
            }
        },
        kernel.variant());
}

/// lambda(1), the boundary value; +inf for Komatu with p < 1.
inline double lambda_at_one(const Kernel& kernel) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return 1.0 + k.c;
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, Komatu>) {
                if (k.p > 1.0) return 0.0;
                if (k.p == 1.0) return 1.0 + k.a;
                return std::numeric_limits<double>::infinity();
            } else {
                return k.sampler(1.0);
            }
        },
        kernel.variant());
}

/**
 * ∫_lo^hi lambda(x) g(x) dx for 0 <= lo < hi <= 1.
 *
 * The piece touching 0 absorbs t^{left_exponent} through x = u^m,
 * m = 1/(1 + left_exponent); interior pieces away from 0 run on a log scale;
 * the piece touching 1 absorbs a singular (1-t)^{right_exponent} through
 * 1 - x = w^m.
 */
template<typename G>
quad::QuadratureResult integrate_against(const Kernel& kernel, G&& g, double lo, double hi,
                                         double tol) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "integrate_against needs 0 <= lo < hi <= 1");
    }
    constexpr double split = 0.5;
    quad::QuadratureResult total{};
    auto accumulate = [&total](const quad::QuadratureResult& r) {
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    };

    if (lo < split) {
        const double left_hi = std::min(hi, split);
        if (lo == 0.0) {
            const double m = 1.0 / (1.0 + kernel.left_exponent());
            const double u_hi = std::pow(left_hi, 1.0 / m);
            accumulate(quad::integrate(
                [&](double u) {
                    const double x = std::pow(u, m);
                    if (!(x > 0.0)) return 0.0;
                    return eval_lambda(kernel, x) * g(x) * m * std::pow(u, m - 1.0);
                },
                0.0, u_hi, 0.5 * tol));
        } else {
            accumulate(quad::integrate_log_scale(
                [&](double x) { return eval_lambda(kernel, x) * g(x); }, lo, left_hi, 0.5 * tol));
        }
    }
    if (hi > split) {
        const double right_lo = std::max(lo, split);
        const double b0 = kernel.right_exponent();
        if (hi == 1.0 && b0 < 0.0) {
            const double m = 1.0 / (1.0 + b0);
            const double w_hi = std::pow(1.0 - right_lo, 1.0 / m);
            accumulate(quad::integrate(
                [&](double w) {
                    const double s = std::pow(w, m);
                    const double x = 1.0 - s;
                    if (!(x < 1.0) || !(s < 1.0)) return 0.0;
                    return detail::lambda_with_log(kernel, x, std::log1p(-s)) * g(x) * m *
                           std::pow(w, m - 1.0);
                },
                0.0, w_hi, 0.5 * tol));
        } else {
            accumulate(quad::integrate([&](double x) { return eval_lambda(kernel, x) * g(x); },
                                       right_lo, hi, 0.5 * tol));
        }
    }
    return total;
}

/// τ_n = ∫₀¹ lambda(t) t^n dt by quadrature, whatever the kernel.
inline double moment_by_quadrature(const Kernel& kernel, int n, double tol = 1e-13) {
    return integrate_against(kernel, [n](double t) { return std::pow(t, n); }, 0.0, 1.0, tol)
        .value;
}

/// τ_n = ∫₀¹ lambda(t) t^n dt; closed form for catalog kernels.
inline double moment(const Kernel& kernel, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "moment index must be >= 0");
    const double nd = n;
    return std::visit(
        [&kernel, n, nd](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                return (1.0 + k.c) / (nd + k.c + 1.0);
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                return (k.a + 1.0) * (k.b + 1.0) / ((nd + k.a + 1.0) * (nd + k.b + 1.0));
            } else if constexpr (std::is_same_v<K, Komatu>) {
                return std::pow((1.0 + k.a) / (nd + k.a + 1.0), k.p);
            } else {
                if (k.moment_hint) return k.moment_hint(n);
                return moment_by_quadrature(kernel, n);
            }
        },
        kernel.variant());
}

inline Kernel Kernel::custom(Custom spec) {
    if (!spec.sampler) {
        throw Error(ErrorCode::InvalidArgument, "custom kernel needs a sampler");
    }
    if (spec.left_exponent <= -1.0) {
        throw Error(ErrorCode::InvalidArgument, "custom kernel left exponent must exceed -1");
    }
    if (spec.right_exponent <= -1.0) {
        throw Error(ErrorCode::InvalidArgument, "custom kernel right exponent must exceed -1");
    }
    Kernel k{Variant{std::move(spec)}};
    const double mass = moment_by_quadrature(k, 0);
    if (std::abs(mass - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument,
                    "custom kernel is not normalized: ∫λ = " + std::to_string(mass));
    }
    return k;
}

/// Λ_ν(t) = ∫_t^1 lambda(x) x^{-1/ν} dx.
inline double capital_lambda(const Kernel& kernel, double nu, double t, double tol = 1e-12) {
    if (!(nu > 0.0)) throw Error(ErrorCode::InvalidArgument, "capital_lambda needs nu > 0");
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::DomainError, "capital_lambda needs t ∈ (0,1]");
    if (t == 1.0) return 0.0;
    const double e = -1.0 / nu;
    return integrate_against(
               kernel, [e](double x) { return e == -1.0 ? 1.0 / x : std::pow(x, e); }, t, 1.0, tol)
        .value;
}

/**
 * Π_{μ,ν}(t) = ∫_t^1 Λ_ν(x) x^{1/ν - 1 - 1/μ} dx (γ > 0), Λ_α(t) when μ = 0.
 *
 * Exchanging the order of integration gives the single integral
 * ∫_t^1 lambda(y) y^{-1/ν} K(t, y) dy with K(t, y) = ∫_t^y x^{κ-1} dx,
 * κ = 1/ν - 1/μ, which is what gets evaluated.
 */
inline double capital_pi(const Kernel& kernel, const MuNu& mn, double t, double tol = 1e-11) {
    if (mn.is_gamma_zero()) return capital_lambda(kernel, mn.nu, t, tol);
    if (!(mn.nu > 0.0)) throw Error(ErrorCode::InvalidArgument, "capital_pi needs nu > 0");
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::DomainError, "capital_pi needs t ∈ (0,1]");
    if (t == 1.0) return 0.0;
    const double kappa = 1.0 / mn.nu - 1.0 / mn.mu;
    const double t_kappa = std::pow(t, kappa);
    const double inv_nu = 1.0 / mn.nu;
    return integrate_against(
               kernel,
               [=](double y) {
                   const double log_ratio = std::log(y / t);
                   const double k = kappa == 0.0
                                        ? log_ratio
                                        : t_kappa * std::expm1(kappa * log_ratio) / kappa;
                   return std::pow(y, -inv_nu) * k;
               },
               t, 1.0, tol)
        .value;
}

}  // namespace convexity
