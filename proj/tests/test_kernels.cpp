#include "convexity/kernels.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace convexity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Kernel> catalog() {
    return {Kernel::bernardi(-0.5), Kernel::alexander(),     Kernel::libera(),
            Kernel::bernardi(2.0),  Kernel::bernardi(5.0),   Kernel::two_param(0.0, 1.0),
            Kernel::two_param(-0.5, 0.5), Kernel::two_param(0.3, 0.3), Kernel::two_param(1.0, 3.0),
            Kernel::komatu(1.0, 2.0), Kernel::komatu(0.0, 2.0), Kernel::komatu(0.5, 0.5),
            Kernel::komatu(2.0, 3.5), Kernel::komatu(0.0, 1.0)};
}

// Λ_ν for Bernardi from the antiderivative.
double bernardi_capital_lambda(double c, double nu, double t) {
    const double e = c - 1.0 / nu + 1.0;
    if (e == 0.0) return -(1.0 + c) * std::log(t);
    return (1.0 + c) * (1.0 - std::pow(t, e)) / e;
}

// Fourth-order central differences as an independent derivative oracle.
template<typename F>
double diff1(F f, double t, double h) {
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("eval_lambda examples") {
    CHECK_THAT(eval_lambda(Kernel::alexander(), 0.5), WithinAbs(1.0, 1e-15));
    CHECK_THAT(eval_lambda(Kernel::libera(), 0.5), WithinAbs(1.0, 1e-15));
    for (double a : {-0.5, 0.0, 0.7}) {
        for (double t : {0.1, 0.5, 0.9}) {
            CHECK_THAT(eval_lambda(Kernel::two_param(a, a), t),
                       WithinRel((a + 1) * (a + 1) * std::pow(t, a) * std::log(1.0 / t), 1e-14));
        }
    }
    CHECK_THAT(eval_lambda(Kernel::komatu(0.0, 2.0), 0.5), WithinRel(std::log(2.0), 1e-14));
}

TEST_CASE("eval_lambda rejects t outside (0,1)") {
    for (double t : {0.0, 1.0, -0.2, 1.5}) {
        try {
            eval_lambda(Kernel::alexander(), t);
            FAIL("expected DomainError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DomainError);
        }
    }
}

TEST_CASE("kernel parameter validation") {
    CHECK_THROWS_AS(Kernel::bernardi(-1.0), Error);
    CHECK_THROWS_AS(Kernel::two_param(-1.0, 0.0), Error);
    CHECK_THROWS_AS(Kernel::two_param(0.0, -2.0), Error);
    CHECK_THROWS_AS(Kernel::komatu(-1.5, 2.0), Error);
    CHECK_THROWS_AS(Kernel::komatu(0.0, 0.0), Error);
    CHECK(Kernel::libera().kind() == "bernardi");
    CHECK(Kernel::komatu(0, 2).kind() == "komatu");
}

TEST_CASE("moment closed forms") {
    CHECK_THAT(moment(Kernel::alexander(), 3), WithinAbs(0.25, 1e-15));
    CHECK_THAT(moment(Kernel::komatu(0.0, 2.0), 1), WithinAbs(0.25, 1e-15));
    CHECK_THAT(moment(Kernel::two_param(0.3, 0.3), 2), WithinRel(1.3 * 1.3 / (3.3 * 3.3), 1e-14));
    for (const auto& k : catalog()) CHECK_THAT(moment(k, 0), WithinAbs(1.0, 1e-14));
}

TEST_CASE("moment closed forms agree with quadrature for n <= 50") {
    for (const auto& k : catalog()) {
        double worst = 0.0;
        for (int n = 0; n <= 50; ++n) {
            worst = std::max(worst, std::abs(moment(k, n) - moment_by_quadrature(k, n)));
        }
        INFO(k.kind() << " left " << k.left_exponent() << " right " << k.right_exponent());
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("moments decrease strictly to zero") {
    for (const auto& k : catalog()) {
        double prev = moment(k, 0);
        for (int n = 1; n <= 200; ++n) {
            const double m = moment(k, n);
            REQUIRE(m < prev);
            REQUIRE(m > 0.0);
            prev = m;
        }
        CHECK(moment(k, 20000) < 0.01);
    }
}

TEST_CASE("two-parameter kernel is continuous as b -> a") {
    for (double a : {-0.5, 0.0, 0.8}) {
        for (double t : {0.05, 0.3, 0.7, 0.95}) {
            const double merged = eval_lambda(Kernel::two_param(a, a), t);
            const double near = eval_lambda(Kernel::two_param(a, a + 1e-8), t);
            const double nearer = eval_lambda(Kernel::two_param(a, a + 1e-9), t);
            CHECK_THAT(near, WithinAbs(merged, 1e-5));
            CHECK_THAT(nearer, WithinAbs(merged, 1e-5));
        }
    }
}

TEST_CASE("closed-form derivatives match finite differences") {
    for (const auto& k : catalog()) {
        for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            auto lam = [&](double x) { return eval_lambda(k, x); };
            auto dlam = [&](double x) { return eval_lambda_prime(k, x); };
            const double d1 = diff1(lam, t, 1e-4);
            const double d2 = diff1(dlam, t, 1e-4);
            INFO(k.kind() << " t=" << t);
            CHECK_THAT(eval_lambda_prime(k, t), WithinAbs(d1, 1e-7 * (1.0 + std::abs(d1))));
            CHECK_THAT(eval_lambda_second(k, t), WithinAbs(d2, 1e-6 * (1.0 + std::abs(d2))));
            CHECK_THAT(log_derivative(k, t), WithinAbs(t * d1 / lam(t), 1e-7 * (1.0 + std::abs(d1))));
        }
    }
}

TEST_CASE("lambda at one") {
    CHECK(lambda_at_one(Kernel::bernardi(1.0)) == 2.0);
    CHECK(lambda_at_one(Kernel::two_param(0.0, 1.0)) == 0.0);
    CHECK(lambda_at_one(Kernel::komatu(1.0, 2.0)) == 0.0);
    CHECK(lambda_at_one(Kernel::komatu(1.0, 1.0)) == 2.0);
    CHECK(std::isinf(lambda_at_one(Kernel::komatu(0.0, 0.5))));
}

TEST_CASE("capital_lambda closed forms") {
    CHECK_THAT(capital_lambda(Kernel::libera(), 1.0, 0.5), WithinAbs(1.0, 1e-12));
    CHECK_THAT(capital_lambda(Kernel::alexander(), 1.0, 0.25), WithinAbs(std::log(4.0), 1e-12));
    for (const auto& k : catalog()) CHECK(capital_lambda(k, 1.7, 1.0) == 0.0);
    for (double c : {-0.5, 0.0, 1.0, 2.0}) {
        for (double nu : {1.0, 2.0, 1.0 / 1.5}) {
            for (double t : {1e-4, 0.01, 0.3, 0.8}) {
                CHECK_THAT(capital_lambda(Kernel::bernardi(c), nu, t),
                           WithinAbs(bernardi_capital_lambda(c, nu, t), 1e-10));
            }
        }
    }
}

TEST_CASE("capital_pi matches the nested definition") {
    struct Case {
        double c;
        MuNu mn;
    };
    for (const auto& cs : {Case{0.0, {1.0, 1.0}}, Case{1.0, {1.0, 2.0}}, Case{2.0, {1.5, 3.0}},
                           Case{-0.5, {1.0, 1.0}}}) {
        const Kernel k = Kernel::bernardi(cs.c);
        const double e = 1.0 / cs.mn.nu - 1.0 - 1.0 / cs.mn.mu;
        for (double t : {1e-3, 0.1, 0.5, 0.9}) {
            const double nested = quad::integrate(
                                      [&](double x) {
                                          return bernardi_capital_lambda(cs.c, cs.mn.nu, x) * std::pow(x, e);
                                      },
                                      t, 1.0, 1e-13)
                                      .value;
            INFO("c=" << cs.c << " t=" << t);
            CHECK_THAT(capital_pi(k, cs.mn, t), WithinAbs(nested, 1e-9));
        }
        CHECK(capital_pi(k, cs.mn, 1.0) == 0.0);
    }
    // μ = 0 delegates to Λ_α.
    const Kernel k = Kernel::komatu(1.0, 2.0);
    CHECK(capital_pi(k, {0.0, 2.0}, 0.3) == capital_lambda(k, 2.0, 0.3, 1e-11));
}

TEST_CASE("capital_pi for non-Bernardi kernels matches nesting over capital_lambda") {
    const MuNu mn{1.0, 2.0};
    const double e = 1.0 / mn.nu - 1.0 - 1.0 / mn.mu;
    for (const auto& k : {Kernel::komatu(1.0, 2.0), Kernel::two_param(0.0, 1.0), Kernel::komatu(0.5, 0.5)}) {
        for (double t : {0.01, 0.4}) {
            // x = 1 - w^2 smooths the square-root behaviour of Λ at 1.
            const double nested = quad::integrate(
                                      [&](double w) {
                                          const double x = 1.0 - w * w;
                                          return 2.0 * w * capital_lambda(k, mn.nu, x, 1e-13) * std::pow(x, e);
                                      },
                                      0.0, std::sqrt(1.0 - t), 1e-10)
                                      .value;
            CHECK_THAT(capital_pi(k, mn, t), WithinAbs(nested, 1e-9));
        }
    }
}

TEST_CASE("capital_lambda and capital_pi are nonnegative and nonincreasing") {
    const MuNu mn{1.0, 2.0};
    for (const auto& k : catalog()) {
        double prev_l = std::numeric_limits<double>::infinity();
        double prev_p = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 40; ++i) {
            const double t = i / 40.0;
            const double l = capital_lambda(k, mn.nu, t);
            const double p = capital_pi(k, mn, t);
            REQUIRE(l >= 0.0);
            REQUIRE(p >= 0.0);
            REQUIRE(l <= prev_l + 1e-12);
            REQUIRE(p <= prev_p + 1e-12);
            prev_l = l;
            prev_p = p;
        }
    }
}

TEST_CASE("custom kernels") {
    Custom spec;
    spec.sampler = [](double t) { return 3.0 * t * t; };
    const Kernel k = Kernel::custom(spec);
    CHECK(k.is_custom());
    CHECK_THAT(moment(k, 2), WithinAbs(0.6, 1e-12));
    CHECK_THAT(eval_lambda_prime(k, 0.5), WithinAbs(3.0, 1e-6));
    CHECK_THAT(eval_lambda_second(k, 0.5), WithinAbs(6.0, 1e-3));

    spec.moment_hint = [](int n) { return 3.0 / (n + 3.0); };
    CHECK(moment(Kernel::custom(spec), 4) == 3.0 / 7.0);

    Custom bad;
    bad.sampler = [](double t) { return 2.0 * t * t; };
    CHECK_THROWS_AS(Kernel::custom(bad), Error);
}
