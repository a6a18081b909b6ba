#include "convexity/sharp_beta.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace convexity;
using Catch::Matchers::WithinAbs;

TEST_CASE("Alexander kernel at delta = 0") {
    const double expected = (1.0 - 2.0 * std::numbers::ln2) / (2.0 - 2.0 * std::numbers::ln2);
    const auto r = sharp_beta(Kernel::alexander(), {3.0, 1.0, 0.0});
    CHECK_THAT(r.beta, WithinAbs(expected, 1e-12));
    CHECK_THAT(r.beta, WithinAbs(-0.629, 5e-4));
    CHECK_THAT(alexander_closed_form(0.0), WithinAbs(expected, 1e-15));
    CHECK_THAT(alexander_closed_form(0.0), WithinAbs(r.beta, 1e-9));
}

TEST_CASE("Alexander closed form over delta") {
    for (double delta : {0.0, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5}) {
        const auto r = sharp_beta(Kernel::alexander(), {3.0, 1.0, delta});
        INFO("delta=" << delta);
        CHECK_THAT(r.beta, WithinAbs(alexander_closed_form(delta), 1e-10));
    }
    // R = 2(π²/24 - ln 2) at δ = 1/2.
    const double R = 2.0 * (std::numbers::pi * std::numbers::pi / 24.0 - std::numbers::ln2);
    CHECK_THAT(alexander_closed_form(0.5), WithinAbs((0.5 + R) / (1.0 + R), 1e-15));
    CHECK_THAT(alexander_closed_form(0.5), WithinAbs(-0.146334999298762, 1e-12));
    CHECK_THROWS_AS(alexander_closed_form(0.6), Error);
}

TEST_CASE("Mobius solve") {
    CHECK(beta_from_integral(0.5) == 0.0);
    CHECK_THROWS_AS(beta_from_integral(1.0), Error);
    for (double I : {-2.0, 0.0, 0.3, 0.69, 0.99}) {
        const double b = beta_from_integral(I);
        CHECK(b < 1.0);
        CHECK_THAT((b - 0.5) / (1.0 - b), WithinAbs(-I, 1e-12));
        CHECK_THAT(integral_from_beta(b), WithinAbs(I, 1e-12));
    }
}

TEST_CASE("reference values for other kernels") {
    const auto komatu = sharp_beta(Kernel::komatu(1.0, 2.0), {3.0, 1.0, 0.25});
    CHECK_THAT(komatu.integral_I, WithinAbs(0.668493962346057719979330453958, 1e-10));
    CHECK_THAT(komatu.beta, WithinAbs(-0.508268155652561112816156889351, 1e-9));

    const auto two = sharp_beta(Kernel::two_param(0.0, 1.0), {3.0, 1.0, 0.0});
    CHECK_THAT(two.beta, WithinAbs(-1.19865964838910641759583736913, 1e-9));

    // Libera: I = ∫ 2t/(1+t) dt = 2 - 2 ln 2.
    const auto libera = sharp_beta(Kernel::libera(), {3.0, 1.0, 0.0});
    const double I = 2.0 - 2.0 * std::numbers::ln2;
    CHECK_THAT(libera.integral_I, WithinAbs(I, 1e-12));
    CHECK_THAT(libera.beta, WithinAbs((0.5 - I) / (1.0 - I), 1e-12));
    CHECK(std::abs(libera.quadrature_I - libera.integral_I) <= 1e-8);
}

TEST_CASE("series and quadrature routes agree across the catalog") {
    const std::vector<Kernel> kernels = {Kernel::alexander(),          Kernel::libera(),
                                         Kernel::bernardi(2.0),        Kernel::bernardi(-0.5),
                                         Kernel::two_param(0.0, 1.0),  Kernel::two_param(-0.5, -0.5),
                                         Kernel::komatu(1.0, 2.0),     Kernel::komatu(0.5, 0.5)};
    const std::vector<ClassParams> params = {{3.0, 1.0, 0.0}, {5.0, 2.0, 0.0}, {2.0, 0.0, 0.0}};
    for (const auto& k : kernels) {
        for (const auto& p : params) {
            for (double delta : {0.0, 0.25, 0.5}) {
                ClassParams q = p;
                q.delta = delta;
                const auto r = sharp_beta(k, q);
                INFO(k.kind() << " alpha=" << p.alpha << " gamma=" << p.gamma << " delta=" << delta);
                CHECK(r.crosscheck_residual <= 1e-8);
                CHECK(r.beta < 1.0);
                CHECK_THAT(integral_from_beta(r.beta), WithinAbs(r.integral_I, 1e-12));
            }
        }
    }
}

TEST_CASE("beta increases with delta") {
    for (const auto& k : {Kernel::alexander(), Kernel::bernardi(2.0), Kernel::komatu(1.0, 2.0)}) {
        double prev = -1e300;
        for (int i = 0; i <= 5; ++i) {
            const double b = sharp_beta(k, {5.0, 2.0, 0.1 * i}).beta;
            CHECK(b > prev);
            prev = b;
        }
    }
}

TEST_CASE("sharp_beta rejects invalid parameters") {
    CHECK_THROWS_AS(sharp_beta(Kernel::alexander(), {2.0, 1.0, 0.0}), Error);
    CHECK_THROWS_AS(sharp_beta(Kernel::alexander(), {3.0, 1.0, 0.7}), Error);
}
