#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "zladder/constants.hpp"
#include "zladder/special.hpp"

using namespace zladder;

namespace {

void check_complex(std::complex<double> got, double re, double im, double rel) {
    CHECK(std::abs(got.real() - re) <= rel * std::max(1.0, std::abs(re)));
    CHECK(std::abs(got.imag() - im) <= rel * std::max(1.0, std::abs(im)));
}

}  // namespace

TEST_CASE("log_gamma reference values") {
    // Reference values computed with 30+ digit arithmetic.
    check_complex(log_gamma({0.25, 0.0}), 1.28802252469807745737061, 0.0, 1e-14);
    check_complex(log_gamma({12.0, 0.0}), 17.50230784587388583928765, 0.0, 1e-14);
    check_complex(log_gamma({3.0, 4.0}),
                  -1.756626784603784110530604, 4.742664438034657928194889, 1e-14);
    check_complex(log_gamma({0.25, 7.0673}),
                  -10.67106306399957554213998, 6.361428559126771449023686, 1e-14);
    check_complex(log_gamma({0.5, 100.0}),
                  -156.1606941462849891813518, 360.5174352679064359166479, 1e-14);
    check_complex(log_gamma({10.0, -3.5}),
                  12.17145982891978161574268, -7.957089311122310074541756, 1e-14);
    check_complex(log_gamma({1e6, 1e6}),
                  12376679.82274329919841693, 13947481.9189425717030414, 1e-14);
    check_complex(log_gamma({0.25, 1e7}),
                  -15707966.37853434572722034, 151180956.1168841172242019, 1e-14);
}

TEST_CASE("log_gamma functional equation") {
    // Gamma(z+1) = z Gamma(z), i.e. log_gamma(z+1) - log_gamma(z) = log z.
    for (double im : {0.5, 3.0, 40.0}) {
        const std::complex<double> z(0.25, im);
        const auto diff = log_gamma(z + 1.0) - log_gamma(z);
        const auto lz = std::log(z);
        CHECK(std::abs(diff - lz) < 1e-12);
    }
}

TEST_CASE("log_gamma domain") {
    CHECK_THROWS_AS(log_gamma({-1.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(log_gamma({0.0, 2.0}), std::domain_error);
}

TEST_CASE("theta reference values") {
    CHECK(theta(10.0) == doctest::Approx(-3.067074396289895291702014).epsilon(1e-13));
    CHECK(theta(100.0) == doctest::Approx(87.97216523178721962548313).epsilon(1e-13));
    CHECK(theta(1000.0) == doctest::Approx(2034.546428038031608703345).epsilon(1e-13));
    CHECK(theta(1e4) == doctest::Approx(31861.92383083582087295034).epsilon(1e-13));
    CHECK(theta(1e5) == doctest::Approx(433752.0272291707814356446).epsilon(1e-13));
    // First positive zero of theta.
    CHECK(std::abs(theta(17.84559954041086081682634)) < 1e-11);
}

TEST_CASE("theta main term at t = 2 pi") {
    // At t = 2 pi the leading terms collapse to -pi - pi/8.
    CHECK(theta_main(2.0 * kPi) == doctest::Approx(-kPi - kPi / 8.0).epsilon(1e-15));
    CHECK(theta(2.0 * kPi) == doctest::Approx(-3.530971066598538045732801).epsilon(1e-13));
}

TEST_CASE("theta asymptotic branch") {
    for (double t : {10.0, 31.7, 100.0, 1234.5, 1e4, 1e5}) {
        const double ex = theta(t, ThetaMethod::exact);
        const double as = theta(t, ThetaMethod::asymptotic);
        CHECK(std::abs(ex - as) < 5e-11 + 1e-15 * std::abs(ex));
    }
}

TEST_CASE("theta main-term remainder bound") {
    // The remainder against the bare main terms is 1/(48 t) + O(1/t^3):
    // positive, below the coarse 1/(8 t) envelope, and near 1/(48 t).
    for (double t = 10.0; t <= 1e5; t *= 1.7) {
        const double rem = theta(t) - theta_main(t);
        CHECK(rem > 0.0);
        CHECK(rem <= 1.0 / (8.0 * t));
        CHECK(rem * 48.0 * t == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("mean_zero_gap") {
    CHECK(mean_zero_gap(1000.0) ==
          doctest::Approx(2.0 * kPi / std::log(1000.0 / (2.0 * kPi))).epsilon(1e-15));
    CHECK(mean_zero_gap(100.0) > mean_zero_gap(1000.0));
    CHECK_THROWS_AS(mean_zero_gap(10.0), std::domain_error);
}

TEST_CASE("prime_count reference values") {
    CHECK(prime_count(10.0) == 4);
    CHECK(prime_count(1000.0) == 168);
    CHECK(prime_count(1e4) == 1229);
    CHECK(prime_count(1e5) == 9592);
    CHECK(prime_count(1e6) == 78498);
    CHECK(prime_count(0.0) == 0);
    CHECK(prime_count(2.0) == 1);
    CHECK(prime_count(2.9) == 1);
}

TEST_CASE("prime_count cap") {
    CHECK_THROWS_AS(prime_count(2e6, 1'000'000), CapExceeded);
}

TEST_CASE("prime_count_approx matches li") {
    CHECK(prime_count_approx(1e6) == doctest::Approx(78627.54915946218192).epsilon(1e-13));
    CHECK(prime_count_approx(1e8) == doctest::Approx(5762209.3754480314676).epsilon(1e-13));
    CHECK(prime_count_approx(1e10) == doctest::Approx(455055614.58662307561).epsilon(1e-13));
    // li stays within a fraction of a percent of the exact count here.
    CHECK(std::abs(prime_count_approx(1e6) - 78498.0) / 78498.0 < 2e-3);
}

TEST_CASE("double_factorial") {
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(2) == 2);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(9) == 945);
    CHECK(double_factorial(10) == 3840);
    CHECK(double_factorial(20) == 3715891200ull);
    // (2n-1)!! (2n)!! = (2n)!
    for (int n = 1; n <= 10; ++n) {
        std::uint64_t fact = 1;
        for (int k = 2; k <= 2 * n; ++k) fact *= static_cast<std::uint64_t>(k);
        CHECK(double_factorial(2 * n - 1) * double_factorial(2 * n) == fact);
    }
    CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
    CHECK_THROWS_AS(double_factorial(40), std::overflow_error);
}
