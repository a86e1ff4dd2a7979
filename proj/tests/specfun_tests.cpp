#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "hadvo/specfun.hpp"

using namespace hadvo;
using namespace hadvo::specfun;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.57721566490153286061;
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("gamma matches classical exact values") {
    CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::gamma(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(specfun::gamma(12.0) == doctest::Approx(39916800.0).epsilon(1e-13));
    CHECK(specfun::gamma(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK(specfun::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-14));
    CHECK(specfun::gamma(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("gamma satisfies the reflection identity") {
    for (double z = 0.05; z < 1.0; z += 0.05) {
        const double lhs = specfun::gamma(z) * specfun::gamma(1.0 - z) * sin_pi(z);
        CHECK(lhs == doctest::Approx(kPi).epsilon(1e-12));
    }
}

TEST_CASE("gamma satisfies the recurrence, including negative arguments") {
    for (const double z : {-3.7, -1.3, -0.5, 0.2, 0.9, 2.5, 8.1, 20.3}) {
        CHECK(specfun::gamma(z + 1.0) == doctest::Approx(z * specfun::gamma(z)).epsilon(1e-13));
    }
}

TEST_CASE("gamma throws at the poles") {
    CHECK_THROWS_AS((void)specfun::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)specfun::gamma(-1.0), std::domain_error);
    CHECK_THROWS_AS((void)specfun::gamma(-7.0), std::domain_error);
}

TEST_CASE("gamma_reciprocal is entire: zero at the poles, 1/gamma elsewhere") {
    CHECK(gamma_reciprocal(0.0) == 0.0);
    CHECK(gamma_reciprocal(-1.0) == 0.0);
    CHECK(gamma_reciprocal(-12.0) == 0.0);
    for (const double z : {-2.5, -0.3, 0.7, 1.0, 4.2, 15.0}) {
        CHECK(gamma_reciprocal(z) == doctest::Approx(1.0 / specfun::gamma(z)).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma_signed tracks the sign on the negative axis") {
    const SignedMagnitude m = log_gamma_signed(-0.5);
    CHECK(m.sign == -1);
    CHECK(m.value() == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
    // Gamma alternates sign between consecutive negative integers.
    CHECK(log_gamma_signed(-1.5).sign == +1);
    CHECK(log_gamma_signed(-2.5).sign == -1);
    CHECK(log_gamma_signed(3.25).sign == +1);
}

TEST_CASE("log_gamma agrees with the standard library") {
    for (const double z : {0.1, 0.5, 1.0, 3.7, 11.0, 140.5}) {
        CHECK(log_gamma(z) == doctest::Approx(std::lgamma(z)).epsilon(1e-13));
    }
}

TEST_CASE("sin_pi is exact at integers and accurate in between") {
    CHECK(sin_pi(3.0) == 0.0);
    CHECK(sin_pi(-11.0) == 0.0);
    CHECK(sin_pi(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sin_pi(1.5) == doctest::Approx(-1.0).epsilon(1e-15));
    for (const double x : {0.123, 0.77, 4.31, -2.6}) {
        CHECK(sin_pi(x) == doctest::Approx(std::sin(kPi * x)).epsilon(1e-13));
    }
}

TEST_CASE("digamma matches classical values and the recurrence") {
    CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-13));
    CHECK(digamma(0.5) ==
          doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
    for (const double z : {0.2, 0.9, 3.6, 17.0}) {
        CHECK(digamma(z + 1.0) == doctest::Approx(digamma(z) + 1.0 / z).epsilon(1e-12));
    }
}

TEST_CASE("beta reduces to the gamma quotient") {
    for (const auto& [l, m] : std::vector<std::pair<double, double>>{
             {0.5, 0.5}, {2.5, 3.5}, {0.3, 4.0}, {1.0, 1.0}}) {
        CHECK(beta(l, m) ==
              doctest::Approx(specfun::gamma(l) * specfun::gamma(m) / specfun::gamma(l + m)).epsilon(1e-12));
    }
    CHECK(beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma_ratio_shift equals the rising factorial") {
    for (const double z : {-2.3, -0.7, 0.4, 1.9, 6.0}) {
        for (const int m : {0, 1, 3, 7}) {
            double rising = 1.0;
            for (int j = 0; j < m; ++j) rising *= z + j;
            CHECK(gamma_ratio_shift(z, m) == doctest::Approx(rising).epsilon(1e-13));
        }
    }
    CHECK(gamma_ratio_shift(-1.0, 3) == doctest::Approx(0.0));
}

TEST_CASE("gen_binomial starts 1, -alpha and follows the ratio recurrence") {
    for (const double alpha : {0.1, 0.5, 0.9}) {
        CHECK(gen_binomial(alpha, 0) == 1.0);
        CHECK(gen_binomial(alpha, 1) == doctest::Approx(-alpha).epsilon(1e-15));
        for (int k = 2; k <= 60; ++k) {
            const double ratio = (-alpha - k + 1) / k;
            CHECK(gen_binomial(alpha, k) ==
                  doctest::Approx(gen_binomial(alpha, k - 1) * ratio).epsilon(1e-13));
        }
    }
}

TEST_CASE("gen_binomial agrees with the gamma representation") {
    // (-alpha choose k) = (-1)^k Gamma(alpha+k) / (Gamma(alpha) k!).
    for (const double alpha : {0.2, 0.55, 0.85}) {
        double kfact = 1.0;
        for (int k = 1; k <= 40; ++k) {
            kfact *= k;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double expected = sign * gamma_ratio_shift(alpha, k) / kfact;
            CHECK(gen_binomial(alpha, k) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("gen_binomial rejects orders outside (0,1) and negative k") {
    CHECK_THROWS_AS((void)gen_binomial(0.0, 3), std::domain_error);
    CHECK_THROWS_AS((void)gen_binomial(1.0, 3), std::domain_error);
    CHECK_THROWS_AS((void)gen_binomial(1.5, 3), std::domain_error);
    CHECK_THROWS_AS((void)gen_binomial(0.5, -1), std::domain_error);
}

TEST_CASE("binomial magnitudes obey the power-law envelope for small orders") {
    for (const double alpha : {0.1, 0.3, 0.5, 0.7}) {
        const double envelope = std::exp(alpha * alpha - alpha);
        for (int k = 1; k <= 200; ++k) {
            CHECK(std::fabs(gen_binomial(alpha, k)) <=
                  envelope / std::pow(static_cast<double>(k), 1.0 - alpha));
        }
    }
}

TEST_CASE("binomial magnitudes exceed the power-law envelope for large orders") {
    // The envelope constant exp(alpha^2-alpha) drops below the true
    // asymptotic coefficient 1/Gamma(alpha) once alpha is large enough
    // (crossover near 0.755), so the inequality genuinely fails there.
    const double alpha = 0.9;
    const double envelope = std::exp(alpha * alpha - alpha);
    const double magnitude = std::fabs(gen_binomial(alpha, 2));  // 0.9*1.9/2
    CHECK(magnitude == doctest::Approx(0.855).epsilon(1e-14));
    CHECK(magnitude > envelope / std::pow(2.0, 1.0 - alpha));
    CHECK(std::exp(alpha * alpha - alpha) < gamma_reciprocal(alpha));
}

}  // TEST_SUITE
