#include <doctest.h>

#include <cmath>

#include "zgof/errors.hpp"
#include "zgof/quadrature.hpp"
#include "zgof/special.hpp"

using namespace zgof;

TEST_CASE("zeta at reference points") {
    CHECK(zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
    CHECK(std::abs(zeta_derivative(2.0, 1) - (-0.9375482543)) < 1e-9);
    CHECK(std::abs(zeta(10.0) - 1.0009945751) < 1e-10);
    CHECK(zeta(4.0) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-14));
    // ζ''(2) = 1.98928023429890...
    CHECK(std::abs(zeta_derivative(2.0, 2) - 1.9892802342989) < 1e-10);
}

TEST_CASE("zeta derivatives agree with central differences") {
    for (double s : {1.2, 1.5, 2.0, 3.3, 7.0}) {
        const double h = 1e-5;
        const auto v = zeta_all(s);
        const double d1 = (zeta(s + h) - zeta(s - h)) / (2 * h);
        const double d2 = (zeta_derivative(s + h, 1) - zeta_derivative(s - h, 1)) / (2 * h);
        CHECK(v.d1 == doctest::Approx(d1).epsilon(1e-7));
        CHECK(v.d2 == doctest::Approx(d2).epsilon(1e-7));
    }
}

TEST_CASE("zeta tail matches direct partial sums") {
    const double s = 2.5;
    double head = 0.0;
    for (int k = 1; k < 7; ++k) {
        head += std::pow(k, -s);
    }
    CHECK(zeta_tail(s, 7).value + head == doctest::Approx(zeta(s)).epsilon(1e-14));
    CHECK(zeta_tail(s, 1).value == doctest::Approx(zeta(s)).epsilon(1e-14));
}

TEST_CASE("zeta decreases to one") {
    double previous = zeta(1.01);
    for (double s = 1.05; s <= 20.0; s += 0.05) {
        const double z = zeta(s);
        CHECK(z < previous);
        CHECK(z > 1.0);
        previous = z;
    }
    CHECK(zeta(20.0) - 1.0 < 1e-5);
}

TEST_CASE("zeta rejects s <= 1") {
    CHECK_THROWS_AS(zeta(1.0), DomainError);
    CHECK_THROWS_AS(zeta(0.5), DomainError);
    PrecisionPolicy bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(zeta(2.0, bad), DomainError);
}

TEST_CASE("log_beta") {
    CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
    const auto integral = integrate_adaptive(
        [](double t) { return std::pow(t, 4.0) * std::pow(1.0 - t, 2.5); }, 0.0, 1.0, 1e-15, 1e-13);
    CHECK(std::exp(log_beta(5.0, 3.5)) == doctest::Approx(integral.value).epsilon(1e-11));
    // large arguments: compare with the three-lgamma form where it is still accurate
    for (double a : {12.0, 57.5, 400.0, 3000.0}) {
        for (double b : {3.0, 4.5, 8.0}) {
            const double direct = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
            CHECK(log_beta(a, b) == doctest::Approx(direct).epsilon(1e-11));
            CHECK(log_beta(b, a) == doctest::Approx(log_beta(a, b)).epsilon(1e-15));
        }
    }
}
