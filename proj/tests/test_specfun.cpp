#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caketest/rng.hpp"
#include "caketest/specfun.hpp"

#include <cmath>

using namespace caketest;

namespace {
// High-precision fixtures, evaluated once with 50-digit arithmetic.
constexpr double kLogGammaBig = 876552896.3898917751005299;   // lnG(52263470.5)
constexpr double kLogBetaBig = -72426950.6804336981958356;    // lnB(.5+s,.5+n-s)
} // namespace

TEST_CASE("log_gamma known values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    // Against the frozen arbitrary-precision fixture: the argument is large
    // enough that a few ulps of relative error are ~1e-7 absolute.
    CHECK(std::fabs(log_gamma(52263470.5) - kLogGammaBig) < 1e-5);
    CHECK(std::fabs(log_gamma(52263470.5) - kLogGammaBig) /
              std::fabs(kLogGammaBig) <
          1e-12);
}

TEST_CASE("log_gamma domain") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma recurrence property") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        // log-uniform x over [0.5, 1e8]
        double x = 0.5 * std::pow(2e8, rng.uniform());
        double lhs = log_gamma(x + 1.0) - log_gamma(x) - std::log(x);
        CHECK(std::fabs(lhs) <= 1e-10 * std::max(1.0, std::fabs(log_gamma(x))));
    }
}

TEST_CASE("log_beta known values") {
    CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-14));
    CHECK(std::fabs(log_beta(0.5 + 52263470.0, 0.5 + 52226530.0) -
                    kLogBetaBig) < 1e-5);
    CHECK_THROWS_AS(log_beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("xi examples and asymptotics") {
    CHECK(xi(1.0) ==
          doctest::Approx(1.0 - 0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
    CHECK(xi(0.5) == doctest::Approx(std::log(std::sqrt(M_PI)) + 0.5 -
                                     0.5 * std::log(0.5) -
                                     0.5 * std::log(2.0 * M_PI))
                         .epsilon(1e-12));
    CHECK(std::fabs(xi(1000.0) + 0.5 * std::log(1000.0)) < 1e-4);

    // |xi(x) + (1/2) ln x| <= 1/(10 x) for x >= 10, and the remainder
    // shrinks monotonically for x >= 2.
    double prev = std::fabs(xi(2.0) + 0.5 * std::log(2.0));
    for (double x = 2.5; x <= 2000.0; x += 0.5) {
        double rem = std::fabs(xi(x) + 0.5 * std::log(x));
        CHECK(rem <= prev + 1e-15);
        if (x >= 10.0) CHECK(rem <= 1.0 / (10.0 * x));
        prev = rem;
    }
}

TEST_CASE("chi2_sf basics") {
    CHECK(chi2_sf(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chi2_sf(0.0, 7.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(chi2_sf(-0.1, 1.0), std::domain_error);

    // nu = 2 closed form exp(-x/2).
    for (double x : {0.1, 1.0, 2.0, 7.8245, 13.8155, 30.0, 55.0})
        CHECK(std::fabs(chi2_sf(x, 2.0) - std::exp(-x / 2.0)) <= 1e-12);
    for (long n : {50L, 100L, 1000L})
        CHECK(chi2_sf(2.0 * std::log((double)n), 2.0) ==
              doctest::Approx(1.0 / (double)n).epsilon(1e-12));

    // Table 2: nu=1, lambda=0, n=50 -> 4.79E-02.
    CHECK(std::fabs(chi2_sf(std::log(50.0), 1.0) - 4.79e-2) < 5e-5);
}

TEST_CASE("chi2_sf monotonicity") {
    for (double nu : {1.0, 2.0, 3.0, 4.0, 10.0}) {
        double prev = 1.0;
        for (double x = 0.25; x <= 40.0; x += 0.25) {
            double v = chi2_sf(x, nu);
            CHECK(v < prev);
            prev = v;
        }
    }
    // Increasing in nu for fixed x > 0.
    for (double x : {0.5, 2.0, 8.0, 20.0}) {
        double prev = 0.0;
        for (double nu = 1.0; nu <= 12.0; nu += 1.0) {
            double v = chi2_sf(x, nu);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("chi2_quantile") {
    CHECK(chi2_quantile(0.05, 1.0) == doctest::Approx(3.8415).epsilon(1e-4));
    // nu = 2 closed form -2 ln(alpha).
    CHECK(chi2_quantile(0.01, 2.0) ==
          doctest::Approx(-2.0 * std::log(0.01)).epsilon(1e-10));
    // Table 2 right panel: nu=1, p=0.05, n=50 -> -0.1 (1 d.p.).
    double v = chi2_quantile(0.05, 1.0) - std::log(50.0);
    CHECK(std::fabs(v - (-0.1)) < 0.05);
    CHECK_THROWS_AS(chi2_quantile(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(chi2_quantile(1.0, 1.0), std::domain_error);
}

TEST_CASE("chi2 quantile/sf round trip") {
    for (double nu : {1.0, 2.0, 3.0, 4.0, 9.0}) {
        for (double a = 1e-8; a < 1.0 - 1e-9; a = a < 0.5 ? a * 3.7 : 1.0 - (1.0 - a) / 3.7) {
            double x = chi2_quantile(a, nu);
            CHECK(std::fabs(chi2_sf(x, nu) - a) <= 1e-8);
        }
    }
}

TEST_CASE("chi2_log_sf deep tail") {
    // nu = 2: ln Q = -x/2 exactly.
    for (double x : {10.0, 100.0, 1000.0, 5000.0})
        CHECK(chi2_log_sf(x, 2.0) == doctest::Approx(-x / 2.0).epsilon(1e-10));
    // Consistency with chi2_sf where it does not underflow.
    for (double x : {1.0, 20.0, 60.0})
        CHECK(chi2_log_sf(x, 3.0) ==
              doctest::Approx(std::log(chi2_sf(x, 3.0))).epsilon(1e-10));
}

TEST_CASE("normal cdf and quantile") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    for (double z : {-4.0, -1.3, 0.2, 2.5, 6.0})
        CHECK(normal_cdf(z) + normal_cdf(-z) ==
              doctest::Approx(1.0).epsilon(1e-13));
    for (double p = 1e-8; p < 1.0; p += 0.037)
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);

    // 95% CI for the Sprenger success probability: (0.50008, 0.50027).
    const double s = 52263470.0, n = 104490000.0;
    const double rho = s / n;
    const double half = normal_quantile(0.975) * std::sqrt(rho * (1 - rho) / n);
    CHECK(std::fabs((rho - half) - 0.50008) < 1e-5);
    CHECK(std::fabs((rho + half) - 0.50027) < 1e-5);
}

TEST_CASE("incomplete gamma consistency") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        double a = 0.3 + 60.0 * rng.uniform();
        double x = 80.0 * rng.uniform();
        CHECK(gamma_p(a, x) + gamma_q(a, x) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    // log_gamma_q matches log(gamma_q) in the non-underflowing range.
    CHECK(log_gamma_q(2.5, 9.0) ==
          doctest::Approx(std::log(gamma_q(2.5, 9.0))).epsilon(1e-10));
}

TEST_CASE("inc_beta basics") {
    CHECK(inc_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
    CHECK(inc_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
    // I_x(1,1) = x.
    for (double x = 0.1; x < 1.0; x += 0.2)
        CHECK(inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    CHECK(inc_beta(2.5, 4.0, 0.3) ==
          doctest::Approx(1.0 - inc_beta(4.0, 2.5, 0.7)).epsilon(1e-12));
}
