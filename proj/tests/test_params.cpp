#include "convexity/params.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace convexity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("resolve_mu_nu special cases") {
    SECTION("alpha = 1 + 2 gamma, gamma = 1") {
        const auto mn = resolve_mu_nu({3.0, 1.0, 0.0});
        CHECK(mn.mu == 1.0);
        CHECK(mn.nu == 1.0);
    }
    SECTION("gamma = 0 gives (0, alpha)") {
        const auto mn = resolve_mu_nu({2.0, 0.0, 0.0});
        CHECK(mn.mu == 0.0);
        CHECK(mn.nu == 2.0);
        CHECK(mn.is_gamma_zero());
    }
    SECTION("alpha = 5, gamma = 2") {
        const auto mn = resolve_mu_nu({5.0, 2.0, 0.0});
        CHECK_THAT(mn.mu, WithinAbs(1.0, 1e-14));
        CHECK_THAT(mn.nu, WithinAbs(2.0, 1e-14));
        CHECK_THAT(mn.mu + mn.nu, WithinRel(3.0, 1e-12));
        CHECK_THAT(mn.mu * mn.nu, WithinRel(2.0, 1e-12));
    }
}

TEST_CASE("alpha = 1 + 2 gamma is resolved exactly") {
    for (double gamma : {1.0, 1.5, 2.0, 3.25, 7.0, 100.0}) {
        const auto mn = resolve_mu_nu({1.0 + 2.0 * gamma, gamma, 0.0});
        CHECK(mn.mu == 1.0);
        CHECK(mn.nu == gamma);
    }
    const auto small = resolve_mu_nu({1.5, 0.25, 0.0});
    CHECK(small.mu == 0.25);
    CHECK(small.nu == 1.0);
}

TEST_CASE("random factorizations recombine") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> mu_dist(0.05, 4.0);
    std::uniform_real_distribution<double> ratio(1.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double mu = mu_dist(rng);
        const double nu = mu * ratio(rng);
        const double gamma = mu * nu;
        const double alpha = mu + nu + gamma;
        const auto mn = resolve_mu_nu({alpha, gamma, 0.0});
        CHECK(mn.mu <= mn.nu);
        CHECK_THAT(mn.mu + mn.nu, WithinRel(alpha - gamma, 1e-12));
        CHECK_THAT(mn.mu * mn.nu, WithinRel(gamma, 1e-12));
    }
}

TEST_CASE("double root at the discriminant boundary") {
    // (alpha - gamma)^2 = 4 gamma with gamma = 4: alpha - gamma = 4.
    const auto mn = resolve_mu_nu({8.0, 4.0, 0.0});
    CHECK_THAT(mn.mu, WithinAbs(2.0, 1e-12));
    CHECK_THAT(mn.nu, WithinAbs(2.0, 1e-12));
}

TEST_CASE("invalid parameters") {
    auto code_of = [](const ClassParams& p) {
        try {
            resolve_mu_nu(p);
        } catch (const Error& e) {
            return e.code();
        }
        FAIL("expected an error");
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of({2.0, 1.0, 0.0}) == ErrorCode::NegativeDiscriminant);
    CHECK(code_of({1.0, -0.5, 0.0}) == ErrorCode::InvalidArgument);
    CHECK(code_of({-1.0, 0.0, 0.0}) == ErrorCode::InvalidArgument);
    CHECK(code_of({3.0, 1.0, 0.6}) == ErrorCode::InvalidArgument);
    CHECK(code_of({3.0, 1.0, -0.1}) == ErrorCode::InvalidArgument);
    CHECK(code_of({2.0, 9.0, 0.0}) == ErrorCode::InvalidArgument);
}

TEST_CASE("validate_regime") {
    auto r = validate_regime({1.0, 1.0});
    CHECK(r.theorem_4_2_applicable);
    CHECK_FALSE(r.theorem_4_3_applicable);

    r = validate_regime({0.0, 1.0});
    CHECK_FALSE(r.theorem_4_2_applicable);
    CHECK(r.theorem_4_3_applicable);

    r = validate_regime({0.5, 2.0});
    CHECK_FALSE(r.theorem_4_2_applicable);
    CHECK_FALSE(r.theorem_4_3_applicable);

    r = validate_regime({0.0, 0.5});
    CHECK_FALSE(r.theorem_4_3_applicable);
}

TEST_CASE("denominator") {
    const MuNu mn{1.0, 2.0};
    CHECK(mn.denominator(0) == 1.0);
    CHECK(mn.denominator(3) == 7.0 * 4.0);
}
