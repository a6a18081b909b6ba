#pragma once

/**
 * @file power_series.hpp
 * @brief Truncated power series on the unit disk and the coefficient maps
 *        used by the sharpness construction
 *
 * A series stores c_0 … c_N. Normalized functions (c_0 = 0, c_1 = 1) model
 * the class A. Every operator here acts coefficientwise, so truncation
 * commutes with all of them.
 */

#include "errors.hpp"
#include "kernels.hpp"
#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace convexity {

using complex = std::complex<double>;

class PowerSeries {
public:
    PowerSeries() : coeffs_(2, complex{}) {}
    explicit PowerSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) {
            throw Error(ErrorCode::InvalidArgument, "power series needs truncation N >= 1");
        }
        for (const auto& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw Error(ErrorCode::InvalidArgument, "power series coefficients must be finite");
            }
        }
    }

    /// Series with coefficient function c(n) for n = 0 … N.
    template<typename F>
    static PowerSeries from_function(std::size_t N, F&& c) {
        std::vector<complex> v(N + 1);
        for (std::size_t n = 0; n <= N; ++n) v[n] = c(n);
        return PowerSeries(std::move(v));
    }

    /// f(z) = z.
    static PowerSeries identity(std::size_t N) {
        return from_function(N, [](std::size_t n) { return complex(n == 1 ? 1.0 : 0.0); });
    }

    std::size_t truncation() const { return coeffs_.size() - 1; }
    const std::vector<complex>& coeffs() const { return coeffs_; }
    complex operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : complex{}; }

    bool is_normalized(double tol = 1e-12) const {
        return std::abs(coeffs_[0]) <= tol && std::abs(coeffs_[1] - 1.0) <= tol;
    }

private:
    std::vector<complex> coeffs_;
};

/// Coefficientwise product, truncated to the shorter series.
inline PowerSeries hadamard(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t N = std::min(a.truncation(), b.truncation());
    return PowerSeries::from_function(N, [&](std::size_t n) { return a[n] * b[n]; });
}

/// φ_{μ,ν}(z) = 1 + Σ D_n/(n+1) z^n.
inline PowerSeries phi_series(const MuNu& mn, std::size_t N) {
    return PowerSeries::from_function(N, [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return complex(mn.denominator(nd) / (nd + 1.0));
    });
}

/// ψ_{μ,ν}(z) = 1 + Σ (n+1)/D_n z^n, the convolution inverse of φ.
inline PowerSeries psi_series(const MuNu& mn, std::size_t N) {
    return PowerSeries::from_function(N, [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return complex((nd + 1.0) / mn.denominator(nd));
    });
}

/// Termwise derivative of order 1 or 2, keeping the truncation index.
inline PowerSeries derivative(const PowerSeries& f, int order = 1) {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
    PowerSeries out = f;
    for (int k = 0; k < order; ++k) {
        const std::size_t N = out.truncation();
        out = PowerSeries::from_function(N, [&](std::size_t n) {
            return n + 1 <= N ? static_cast<double>(n + 1) * out[n + 1] : complex{};
        });
    }
    return out;
}

inline constexpr double kSelfTestTolerance = 1e-12;

/**
 * H = (1-α+2γ) f/z + (α-2γ) f' + γ z f'' for normalized f, computed from
 * the differential expression and again as f' ∗ φ_{μ,ν}. The two must agree
 * to 1e-12 relative or SelfTestFailure is thrown. Returns H with
 * truncation max(N - 1, 1).
 */
inline PowerSeries operator_H(const PowerSeries& f, const ClassParams& params) {
    if (!f.is_normalized()) {
        throw Error(ErrorCode::InvalidArgument, "operator_H needs a normalized series");
    }
    const MuNu mn = resolve_mu_nu(params);
    const double alpha = params.alpha;
    const double gamma = params.gamma;
    const std::size_t N = f.truncation();

    std::vector<complex> direct(std::max<std::size_t>(N, 2));
    for (std::size_t n = 0; n < N; ++n) {
        const double nd = static_cast<double>(n);
        const complex a = f[n + 1];
        direct[n] = (1.0 - alpha + 2.0 * gamma) * a + (alpha - 2.0 * gamma) * (nd + 1.0) * a +
                    gamma * nd * (nd + 1.0) * a;
    }
    const PowerSeries fprime = derivative(f);
    const PowerSeries conv = hadamard(fprime, phi_series(mn, std::max<std::size_t>(N - 1, 1)));

    for (std::size_t n = 0; n < N; ++n) {
        const double scale = std::max(std::abs(direct[n]), std::abs(conv[n]));
        if (std::abs(direct[n] - conv[n]) > kSelfTestTolerance * scale) {
            throw Error(ErrorCode::SelfTestFailure,
                        "operator_H direct and convolution forms disagree at n=" +
                            std::to_string(n));
        }
    }
    return PowerSeries(std::move(direct));
}

/// f(z) = z + 2(1-β) Σ z^{n+1}/D_n.
inline PowerSeries extremal_function(const MuNu& mn, double beta, std::size_t N) {
    if (!(beta < 1.0)) throw Error(ErrorCode::InvalidArgument, "extremal function needs beta < 1");
    const double scale = 2.0 * (1.0 - beta);
    return PowerSeries::from_function(N, [&](std::size_t n) -> complex {
        if (n == 0) return 0.0;
        if (n == 1) return 1.0;
        return scale / mn.denominator(static_cast<double>(n - 1));
    });
}

inline constexpr double kUnitModulusTolerance = 1e-12;

/**
 * Normalized f with f' = (β + (1-β)(1+xz)/(1+yz)) ∗ ψ_{μ,ν}. The boundary
 * family coefficients are (1-β)(x-y)(-y)^{n-1}, so a_{n+1} = H_n / D_n.
 */
inline PowerSeries duality_test_function(complex x, complex y, double beta, const MuNu& mn,
                                         std::size_t N) {
    if (std::abs(std::abs(x) - 1.0) > kUnitModulusTolerance ||
        std::abs(std::abs(y) - 1.0) > kUnitModulusTolerance) {
        throw Error(ErrorCode::DomainError, "x and y must have unit modulus");
    }
    if (!(beta < 1.0)) throw Error(ErrorCode::InvalidArgument, "test function needs beta < 1");
    std::vector<complex> c(N + 1);
    c[1] = 1.0;
    complex h = (1.0 - beta) * (x - y);
    for (std::size_t n = 1; n < N; ++n) {
        c[n + 1] = h / mn.denominator(static_cast<double>(n));
        h *= -y;
    }
    return PowerSeries(std::move(c));
}

/// F = V_λ f: c_n ↦ τ_{n-1} c_n.
inline PowerSeries apply_transform(const Kernel& kernel, const PowerSeries& f) {
    if (std::abs(f[0]) > 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "apply_transform needs f(0) = 0");
    }
    return PowerSeries::from_function(f.truncation(), [&](std::size_t n) -> complex {
        if (n == 0) return 0.0;
        return moment(kernel, static_cast<int>(n - 1)) * f[n];
    });
}

struct SeriesEval {
    complex value;
    double tail_bound = 0.0;
    bool truncation_warning = false;
};

/**
 * f^{(order)}(z) by Horner's rule. The tail bound assumes the omitted
 * coefficients are no larger than the largest of the last N/4 stored ones:
 * M (N+1)^order |z|^{N+1} / (1 - |z|).
 */
inline SeriesEval eval(const PowerSeries& f, complex z, int order = 0, double tol = 1e-8) {
    if (order < 0 || order > 2) throw Error(ErrorCode::InvalidArgument, "eval order must be 0, 1 or 2");
    const std::size_t N = f.truncation();
    const auto& c = f.coeffs();
    complex acc{};
    for (std::size_t k = N + 1; k-- > static_cast<std::size_t>(order);) {
        double factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= static_cast<double>(k - j);
        acc = acc * z + factor * c[k];
    }

    SeriesEval out;
    out.value = acc;
    const double r = std::abs(z);
    if (r >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        double M = 0.0;
        for (std::size_t k = N - N / 4; k <= N; ++k) M = std::max(M, std::abs(c[k]));
        const double Np1 = static_cast<double>(N + 1);
        out.tail_bound = M * std::pow(Np1, order) * std::pow(r, Np1) / (1.0 - r);
    }
    out.truncation_warning = out.tail_bound > tol;
    return out;
}

inline constexpr double kTruncationTarget = 1e-8;
inline constexpr std::size_t kMinTruncation = 4096;
inline constexpr std::size_t kMaxTruncation = std::size_t{1} << 22;

/// Smallest power of two N >= 4096 with r^{N+1} / ((N+1)(1-r)) <= 1e-8.
inline std::size_t required_truncation(double r) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "radius must lie in (0, 1)");
    for (std::size_t N = kMinTruncation; N <= kMaxTruncation; N *= 2) {
        const double Np1 = static_cast<double>(N + 1);
        if (std::exp(Np1 * std::log(r)) / (Np1 * (1.0 - r)) <= kTruncationTarget) return N;
    }
    throw Error(ErrorCode::DomainError, "radius too close to 1 for the truncation budget");
}

}  // namespace convexity
