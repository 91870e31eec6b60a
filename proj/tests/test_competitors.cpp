#include <doctest.h>

#include <cmath>

#include "zgof/competitors.hpp"
#include "zgof/errors.hpp"
#include "zgof/estimation.hpp"
#include "zgof/quadrature.hpp"

using namespace zgof;

namespace {

Sample draw(double s, std::size_t n, std::uint32_t stream) {
    RngStream rng(31, stream);
    return sample_zeta(ZetaModel::make(s), n, rng);
}

} // namespace

TEST_CASE("CvM examples") {
    const double p1 = 6.0 / (kPi * kPi);
    CHECK(cvm_henze(Sample(std::vector<Count>{1}), 2.0) == doctest::Approx((1 - p1) * (1 - p1)).epsilon(1e-13));
    CHECK(cvm_henze(Sample(std::vector<Count>{1}), 2.0) == doctest::Approx(0.1537211575).epsilon(1e-9));
    double previous = 1.0;
    for (double s : {5.0, 10.0, 20.0, 40.0}) {
        const double v = cvm_henze(Sample(std::vector<Count>(10, 1)), s);
        CHECK(v < previous);
        previous = v;
    }
    CHECK(previous < 1e-20);
}

TEST_CASE("CvM agrees with the observation-wise sum") {
    const Sample x = draw(1.6, 300, 1);
    const double s = mle_fit(x).s_hat;
    const auto model = ZetaModel::make(s);
    const double n = static_cast<double>(x.size());
    double direct = 0.0;
    for (Count xi : x.values()) {
        double below = 0.0;
        for (Count xj : x.values()) {
            below += xj <= xi ? 1.0 : 0.0;
        }
        const double gap = below / n - zeta_cdf(model, xi);
        direct += gap * gap;
    }
    CHECK(cvm_henze(x, s) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("KSD U-statistic over the tally equals the pair sum") {
    const Sample x = draw(2.0, 60, 2);
    const double s = mle_fit(x).s_hat;
    const Count K = Tally::of(x).max();
    double direct = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i != j) {
                direct += ksd_kernel(x[i], x[j], K, s);
            }
        }
    }
    const double n = static_cast<double>(x.size());
    CHECK(ksd_yang(x, s) == doctest::Approx(direct / (n * (n - 1))).epsilon(1e-11));
    CHECK(ksd_kernel(2, 5, K, s) == doctest::Approx(ksd_kernel(5, 2, K, s)).epsilon(1e-15));
    CHECK_THROWS_AS(ksd_yang(Sample(std::vector<Count>{3}), 2.0), DomainError);
}

TEST_CASE("KSD score") {
    CHECK(ksd_score(1, 10, 2.0) == doctest::Approx(0.75));
    CHECK(ksd_score(10, 10, 2.0) == doctest::Approx(1.0 - 100.0));
}

TEST_CASE("Meintanis statistic") {
    const Sample x = draw(2.0, 100, 3);
    const double s = mle_fit(x).s_hat;
    const Tally t = Tally::of(x);
    for (double beta : {0.5, 1.0, 4.0}) {
        const auto reference = integrate_half_line(
            [&](double u) {
                const double d = zeta(s) * empirical_mellin(t, u) - zeta(s + u);
                return d * d * std::exp(-beta * u);
            },
            1e-16, 1e-11);
        CHECK(meintanis(t, s, beta) == doctest::Approx(100.0 * reference.value).epsilon(1e-8));
    }
    CHECK(empirical_mellin(t, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(meintanis(t, s, 0.0), DomainError);
}

TEST_CASE("BEN examples and pointwise oracle") {
    CHECK(ben_statistic(Sample(std::vector<Count>{1}), 1.0) == doctest::Approx(0.25));
    const Sample x(std::vector<Count>{1, 1, 2, 5, 5, 9});
    const Tally t = Tally::of(x);
    double direct = 0.0;
    for (Count k = 1; k <= 9; ++k) {
        double rho = 0.0;
        for (Count v : x.values()) {
            rho += v == k ? 1.0 : 0.0;
        }
        const double d = characterization_mean(t, 1.7, k) - rho / 6.0;
        direct += d * d;
    }
    CHECK(ben_statistic(x, 1.7) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("null statistics stay bounded on large samples") {
    for (std::uint32_t rep = 0; rep < 5; ++rep) {
        const Sample x = draw(2.0, 100000, 100 + rep);
        const double s = mle_fit(x).s_hat;
        CHECK(cvm_henze(x, s) < 5.0);
        const Sample y = draw(3.0, 100000, 200 + rep);
        CHECK(ben_statistic(y, mle_fit(y).s_hat) < 10.0 / 100000.0);
    }
}
