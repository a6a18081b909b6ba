#include "convexity/acceleration.hpp"
#include "convexity/quadrature.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace convexity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("integrate elementary integrals") {
    auto one = quad::integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
    CHECK_THAT(one.value, WithinAbs(1.0, 1e-15));
    CHECK(one.error_estimate >= 0.0);
    CHECK(one.evaluations > 0);

    auto ln2 = quad::integrate([](double t) { return 1.0 / (1.0 + t); }, 0.0, 1.0, 1e-12);
    CHECK_THAT(ln2.value, WithinAbs(std::numbers::ln2, 1e-14));

    auto t7 = quad::integrate([](double t) { return std::pow(t, 7); }, 0.0, 1.0, 1e-12);
    CHECK_THAT(t7.value, WithinAbs(0.125, 1e-15));
}

TEST_CASE("error estimate bounds the true error on a test battery") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    int bounded = 0;
    int total = 0;
    for (int degree = 0; degree <= 20; ++degree) {
        std::vector<double> c(static_cast<std::size_t>(degree) + 1);
        for (auto& x : c) x = coef(rng);
        auto p = [&](double t) {
            double acc = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
            return acc;
        };
        double exact = 0.0;
        double exact_log = 0.0;
        double exact_sqrt = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            exact += c[k] / (k + 1.0);
            exact_log += c[k] / ((k + 1.0) * (k + 1.0));
            exact_sqrt += c[k] / (k + 0.5);
        }

        auto plain = quad::integrate(p, 0.0, 1.0, 1e-10);
        bounded += std::abs(plain.value - exact) <= plain.error_estimate + 1e-15;

        auto logw = quad::integrate([&](double t) { return std::log(1.0 / t) * p(t); }, 0.0, 1.0, 1e-10);
        bounded += std::abs(logw.value - exact_log) <= logw.error_estimate + 1e-15;

        // ∫ p(s) s^{-1/2} ds with the weight absorbed.
        auto sqrtw = quad::integrate_power_weighted(p, 2.0, 1e-10);
        bounded += std::abs(sqrtw.value - exact_sqrt) <= sqrtw.error_estimate + 1e-15;
        CHECK_THAT(sqrtw.value, WithinAbs(exact_sqrt, 1e-10));
        CHECK_THAT(logw.value, WithinAbs(exact_log, 1e-10));
        total += 3;
    }
    CHECK(bounded == total);
}

TEST_CASE("integrate_power_weighted") {
    for (double mu : {0.3, 1.0, 2.5, 7.0}) {
        auto r = quad::integrate_power_weighted([](double) { return 1.0; }, mu, 1e-13);
        CHECK_THAT(r.value, WithinRel(mu, 1e-13));
    }
    auto r = quad::integrate_power_weighted([](double s) { return s; }, 2.0, 1e-13);
    CHECK_THAT(r.value, WithinAbs(2.0 / 3.0, 1e-14));

    auto f = [](double s) { return std::exp(-s) * std::cos(3.0 * s); };
    auto a = quad::integrate_power_weighted(f, 1.0, 1e-14);
    auto b = quad::integrate(f, 0.0, 1.0, 1e-14);
    CHECK_THAT(a.value, WithinAbs(b.value, 1e-14));
}

TEST_CASE("integrate_2d_weighted") {
    auto ones = quad::integrate_2d_weighted([](double, double) { return 1.0; }, 1.5, 3.0, 1e-12);
    CHECK_THAT(ones.value, WithinRel(4.5, 1e-12));

    // ψ_{1,1}(0.5) = ∫∫ 1/(1 - 0.5 u v)^2 du dv = Σ 0.5^n/(n+1) = 2 ln 2.
    auto psi = quad::integrate_2d_weighted(
        [](double u, double v) {
            const double d = 1.0 - 0.5 * u * v;
            return 1.0 / (d * d);
        },
        1.0, 1.0, 1e-12);
    CHECK_THAT(psi.value, WithinAbs(2.0 * std::numbers::ln2, 1e-11));
}

TEST_CASE("complex and array valued integrands") {
    const std::complex<double> z(0.3, 0.4);
    auto r = quad::integrate_basic([&](double t) { return std::exp(z * t); }, 0.0, 1.0, 1e-13);
    const auto exact = (std::exp(z) - 1.0) / z;
    CHECK_THAT(r.value.real(), WithinAbs(exact.real(), 1e-13));
    CHECK_THAT(r.value.imag(), WithinAbs(exact.imag(), 1e-13));

    auto a = quad::integrate_basic(
        [](double t) { return std::array<double, 2>{t, t * t}; }, 0.0, 2.0, 1e-13);
    CHECK_THAT(a.value[0], WithinAbs(2.0, 1e-13));
    CHECK_THAT(a.value[1], WithinAbs(8.0 / 3.0, 1e-13));

    auto v = quad::integrate_basic(
        [](double t) { return std::vector<std::complex<double>>{{t, 1.0}, {0.0, t * t * t}}; }, 0.0,
        1.0, 1e-13);
    CHECK_THAT(v.value[0].real(), WithinAbs(0.5, 1e-14));
    CHECK_THAT(v.value[0].imag(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(v.value[1].imag(), WithinAbs(0.25, 1e-14));
}

TEST_CASE("integrate_log_scale") {
    auto r = quad::integrate_log_scale([](double x) { return 1.0 / x; }, 1e-6, 1.0, 1e-12);
    CHECK_THAT(r.value, WithinAbs(6.0 * std::log(10.0), 1e-11));
}

TEST_CASE("quadrature failures") {
    CHECK_THROWS_AS(quad::integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10), Error);
    CHECK_THROWS_AS(quad::integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), Error);
    try {
        quad::integrate([](double t) { return 1.0 / (t - 0.3); }, 0.0, 1.0, 1e-10);
        FAIL("pole should not integrate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::QuadratureFailure);
    }
}

TEST_CASE("Euler transform of alternating series") {
    auto ln2 = euler_alternating_sum([](std::size_t n) { return 1.0 / (n + 1.0); }, 0);
    CHECK_THAT(ln2.value, WithinAbs(std::numbers::ln2, 1e-15));

    auto eta2 = euler_alternating_sum([](std::size_t n) { return 1.0 / ((n + 1.0) * (n + 1.0)); }, 0);
    CHECK_THAT(eta2.value, WithinAbs(std::numbers::pi * std::numbers::pi / 12.0, 1e-15));

    // Σ_{n≥1} (-1)^n / n = -ln 2
    auto shifted = euler_alternating_sum([](std::size_t n) { return 1.0 / n; }, 1);
    CHECK_THAT(shifted.value, WithinAbs(-std::numbers::ln2, 1e-15));

    auto geometric = euler_alternating_sum([](std::size_t n) { return std::pow(0.95, n); }, 0);
    CHECK_THAT(geometric.value, WithinAbs(1.0 / 1.95, 1e-15));
}

TEST_CASE("Euler transform gives Abel sums of divergent series") {
    auto grandi = euler_alternating_sum([](std::size_t) { return 1.0; }, 0);
    CHECK_THAT(grandi.value, WithinAbs(0.5, 1e-15));

    auto linear = euler_alternating_sum([](std::size_t n) { return n + 1.0; }, 0);
    CHECK_THAT(linear.value, WithinAbs(0.25, 1e-12));
}
