#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod integration with power-weight substitutions
 *
 * All routines take the integrand by value/forwarding reference and keep no
 * global state. Panels are refined globally (worst panel first) with a
 * 7-point Gauss / 15-point Kronrod pair; the returned error estimate is the
 * sum of |K15 - G7| over the final panels, which is an upper bound on the
 * error of the Gauss rule and therefore conservative for the Kronrod value.
 *
 * Singular weights never reach the adaptive routine: callers absorb
 * s^{1/mu - 1} through s = u^mu (integrate_power_weighted) or similar
 * substitutions before integrating.
 */

#include "errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace convexity::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Same as QuadratureResult for vector/complex valued integrands.
template<typename V>
struct BasicQuadratureResult {
    V value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr int kMaxDepth = 60;
inline constexpr std::size_t kMaxPanels = 200000;

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }
template<std::size_t K>
double magnitude(const std::array<double, K>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
template<std::size_t K>
double magnitude(const std::array<std::complex<double>, K>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, magnitude(x));
    return m;
}
template<typename T>
double magnitude(const std::vector<T>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, magnitude(x));
    return m;
}

inline double scaled(double v, double s) { return v * s; }
inline std::complex<double> scaled(std::complex<double> v, double s) { return v * s; }
template<typename T, std::size_t K>
std::array<T, K> scaled(std::array<T, K> v, double s) {
    for (auto& x : v) x *= s;
    return v;
}
template<typename T>
std::vector<T> scaled(std::vector<T> v, double s) {
    for (auto& x : v) x *= s;
    return v;
}

inline double sum(double a, double b) { return a + b; }
inline std::complex<double> sum(std::complex<double> a, std::complex<double> b) { return a + b; }
template<typename T, std::size_t K>
std::array<T, K> sum(std::array<T, K> a, const std::array<T, K>& b) {
    for (std::size_t i = 0; i < K; ++i) a[i] += b[i];
    return a;
}
// A default-constructed (empty) vector acts as zero.
template<typename T>
std::vector<T> sum(std::vector<T> a, const std::vector<T>& b) {
    if (a.empty()) return b;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline double diff(double a, double b) { return a - b; }
inline std::complex<double> diff(std::complex<double> a, std::complex<double> b) { return a - b; }
template<typename T, std::size_t K>
std::array<T, K> diff(std::array<T, K> a, const std::array<T, K>& b) {
    for (std::size_t i = 0; i < K; ++i) a[i] -= b[i];
    return a;
}
template<typename T>
std::vector<T> diff(std::vector<T> a, const std::vector<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template<typename V>
struct Panel {
    double a;
    double b;
    int depth;
    V value;
    double error;
    double roundoff;

    bool operator<(const Panel& other) const { return error < other.error; }
};

template<typename V, typename F>
Panel<V> gauss_kronrod_panel(F& f, double a, double b, int depth) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V fc = f(centre);
    V kronrod = scaled(fc, kKronrodWeights[7]);
    V gauss = scaled(fc, kGaussWeights[3]);
    double abs_sum = magnitude(fc) * kKronrodWeights[7];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const V f1 = f(centre - dx);
        const V f2 = f(centre + dx);
        const V both = sum(f1, f2);
        kronrod = sum(kronrod, scaled(both, kKronrodWeights[j]));
        if (j % 2 == 1) gauss = sum(gauss, scaled(both, kGaussWeights[j / 2]));
        abs_sum += (magnitude(f1) + magnitude(f2)) * kKronrodWeights[j];
    }
    kronrod = scaled(kronrod, half);
    gauss = scaled(gauss, half);
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    const double err = std::max(magnitude(diff(kronrod, gauss)), roundoff);
    return Panel<V>{a, b, depth, kronrod, err, roundoff};
}

}  // namespace detail

/**
 * Adaptive integration of f over [a, b] to absolute tolerance tol.
 *
 * Works for real, complex, std::array and std::vector valued integrands (the
 * error norm is the max-component magnitude). Throws QuadratureFailure when a panel
 * would have to be bisected past depth 60 or the panel budget is exhausted.
 */
template<typename F>
auto integrate_basic(F&& f, double a, double b, double tol)
    -> BasicQuadratureResult<std::decay_t<decltype(f(a))>> {
    using V = std::decay_t<decltype(f(a))>;
    if (!(a < b)) {
        throw Error(ErrorCode::InvalidArgument, "integrate requires a < b");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "integrate requires tol > 0");
    }
    std::priority_queue<detail::Panel<V>> panels;
    panels.push(detail::gauss_kronrod_panel<V>(f, a, b, 0));
    std::size_t evaluations = 15;
    double total_error = panels.top().error;
    double total_roundoff = panels.top().roundoff;

    while (total_error > tol) {
        const detail::Panel<V> worst = panels.top();
        // Only roundoff left in the worst panel: nothing bisection can fix.
        if (worst.error <= worst.roundoff || total_error <= 2.0 * total_roundoff) break;
        if (worst.depth >= kMaxDepth) {
            throw Error(ErrorCode::QuadratureFailure,
                        "maximum subdivision depth reached near x=" + std::to_string(worst.a));
        }
        if (panels.size() >= kMaxPanels) {
            throw Error(ErrorCode::QuadratureFailure, "panel budget exhausted");
        }
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gauss_kronrod_panel<V>(f, worst.a, mid, worst.depth + 1);
        auto right = detail::gauss_kronrod_panel<V>(f, mid, worst.b, worst.depth + 1);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        total_roundoff += left.roundoff + right.roundoff - worst.roundoff;
        panels.push(std::move(left));
        panels.push(std::move(right));
    }

    // Re-sum from scratch: the running totals drift after many updates.
    V value{};
    double error = 0.0;
    std::vector<detail::Panel<V>> finished;
    finished.reserve(panels.size());
    while (!panels.empty()) {
        finished.push_back(panels.top());
        panels.pop();
    }
    std::sort(finished.begin(), finished.end(),
              [](const auto& l, const auto& r) { return l.a < r.a; });
    for (const auto& p : finished) {
        value = detail::sum(value, p.value);
        error += p.error;
    }
    for (const auto& p : finished) {
        if (!std::isfinite(detail::magnitude(p.value))) {
            throw Error(ErrorCode::QuadratureFailure, "non-finite integrand value");
        }
    }
    return {value, error, evaluations};
}

/// Real-valued adaptive integration; see integrate_basic.
template<typename F>
QuadratureResult integrate(F&& f, double a, double b, double tol) {
    auto r = integrate_basic([&](double x) -> double { return f(x); }, a, b, tol);
    return {r.value, r.error_estimate, r.evaluations};
}

/**
 * ∫₀¹ g(s) s^{1/mu - 1} ds, evaluated as mu·∫₀¹ g(u^mu) du.
 *
 * The substitution removes the endpoint singularity for mu > 1 and the
 * derivative singularity for mu < 1, so g only needs to be continuous.
 */
template<typename G>
QuadratureResult integrate_power_weighted(G&& g, double mu, double tol) {
    if (!(mu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "power weight needs mu > 0");
    }
    auto r = integrate(
        [&](double u) { return g(mu == 1.0 ? u : std::pow(u, mu)); }, 0.0, 1.0, tol / mu);
    return {mu * r.value, mu * r.error_estimate, r.evaluations};
}

/**
 * ∫₀¹∫₀¹ g(s, w) s^{1/mu - 1} w^{1/nu - 1} ds dw via the tensor substitution
 * s = u^mu, w = v^nu and nested adaptive integration.
 *
 * The tolerance is split evenly between the outer integral and the inner
 * integrals; the returned error adds the outer estimate to the largest inner
 * estimate (the outer domain has unit length).
 */
template<typename G>
QuadratureResult integrate_2d_weighted(G&& g, double mu, double nu, double tol) {
    if (!(mu > 0.0) || !(nu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "2d power weights need mu, nu > 0");
    }
    const double scale = mu * nu;
    const double inner_tol = 0.5 * tol / scale;
    const double outer_tol = 0.5 * tol / scale;
    double worst_inner = 0.0;
    std::size_t evaluations = 0;
    auto outer = integrate(
        [&](double u) {
            const double s = mu == 1.0 ? u : std::pow(u, mu);
            auto inner = integrate(
                [&](double v) { return g(s, nu == 1.0 ? v : std::pow(v, nu)); }, 0.0, 1.0,
                inner_tol);
            worst_inner = std::max(worst_inner, inner.error_estimate);
            evaluations += inner.evaluations;
            return inner.value;
        },
        0.0, 1.0, outer_tol);
    return {scale * outer.value, scale * (outer.error_estimate + worst_inner), evaluations};
}

/// ∫_lo^hi f(x) dx for 0 < lo < hi on a logarithmic scale (x = e^s).
template<typename F>
QuadratureResult integrate_log_scale(F&& f, double lo, double hi, double tol) {
    if (!(lo > 0.0) || !(lo < hi)) {
        throw Error(ErrorCode::InvalidArgument, "log-scale integration needs 0 < lo < hi");
    }
    return integrate(
        [&](double s) {
            const double x = std::exp(s);
            return f(x) * x;
        },
        std::log(lo), std::log(hi), tol);
}

}  // namespace convexity::quad
