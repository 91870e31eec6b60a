#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "zgof/distributions.hpp"
#include "zgof/errors.hpp"

using namespace zgof;

namespace {

// Pearson chi-square of a sample against `pmf` on cells {1}, ..., {K-1}, {>= K}.
double chi_square(const Sample& sample, const std::function<double(Count)>& pmf, Count K) {
    std::vector<double> observed(K, 0.0);
    for (Count x : sample.values()) {
        observed[std::min<Count>(x, K) - 1] += 1.0;
    }
    double head = 0.0;
    double stat = 0.0;
    const double n = static_cast<double>(sample.size());
    for (Count k = 1; k < K; ++k) {
        const double p = pmf(k);
        head += p;
        stat += std::pow(observed[k - 1] - n * p, 2) / (n * p);
    }
    const double tail = 1.0 - head;
    if (tail > 1e-9) {
        stat += std::pow(observed[K - 1] - n * tail, 2) / (n * tail);
    }
    return stat;
}

// df + 5 sd: a failure is a real defect, not chance
double loose_bound(double df) { return df + 5.0 * std::sqrt(2.0 * df); }

} // namespace

TEST_CASE("zeta pmf and cdf examples") {
    const auto m2 = ZetaModel::make(2.0);
    CHECK(zeta_pmf(m2, 1) == doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(zeta_pmf(m2, 2) == doctest::Approx(0.25 * 6.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(zeta_pmf(ZetaModel::make(3.0), 5) == doctest::Approx(0.0066553).epsilon(1e-4));
    CHECK(zeta_cdf(m2, 1) == doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-13));
    CHECK(zeta_cdf(m2, 2) == doctest::Approx(0.7599089).epsilon(1e-6));
    CHECK(1.0 - zeta_cdf(m2, 1'000'000'000) < 1e-9);
    double previous = 0.0;
    for (Count k = 1; k < 50; ++k) {
        const double f = zeta_cdf(m2, k);
        CHECK(f > previous);
        CHECK(zeta_sf(m2, k) == doctest::Approx(1.0 - f).epsilon(1e-12));
        previous = f;
    }
    CHECK_THROWS_AS(ZetaModel::make(1.0), DomainError);
    CHECK_THROWS_AS(zeta_pmf(m2, 0), DomainError);
}

TEST_CASE("samples and tallies") {
    CHECK_THROWS_AS(Sample(std::vector<Count>{1, 0, 3}), DomainError);
    const Sample s(std::vector<Count>{3, 1, 3, 7, 1, 1});
    const Tally t = Tally::of(s);
    CHECK(t.values == std::vector<Count>{1, 3, 7});
    CHECK(t.counts == std::vector<std::uint64_t>{3, 2, 1});
    CHECK(t.n == 6);
    CHECK(t.mean_log == doctest::Approx((2 * std::log(3.0) + std::log(7.0)) / 6.0));
    CHECK(t.max() == 7);
}

TEST_CASE("zeta sampler matches the pmf") {
    for (double s : {1.5, 2.0, 3.5}) {
        const auto model = ZetaModel::make(s);
        RngStream rng(11, static_cast<std::uint64_t>(s * 100));
        const Sample x = sample_zeta(model, 200000, rng);
        const double stat = chi_square(x, [&](Count k) { return zeta_pmf(model, k); }, 30);
        CHECK(stat < loose_bound(29));
    }
}

TEST_CASE("zeta sampler golden values") {
    RngStream rng(2024, 0);
    const Sample x = sample_zeta(ZetaModel::make(2.0), 5, rng);
    RngStream again(2024, 0);
    const Sample y = sample_zeta(ZetaModel::make(2.0), 5, again);
    CHECK(std::vector<Count>(x.values().begin(), x.values().end()) ==
          std::vector<Count>(y.values().begin(), y.values().end()));
    CHECK(std::vector<Count>(x.values().begin(), x.values().end()) == std::vector<Count>{3, 2, 20, 2, 2});
}

TEST_CASE("alternative pmfs are normalized and consistent with sf") {
    const std::vector<AlternativeSpec> specs = {
        ZetaAlt{2.0},          GeomMatched{3.0},       Zipf{2.0, 3},     Zipf{1.5, 20},     ZetaGeomSplice{3.0, 10, 0.4},
        ZetaGeomSplice{2.0, 5, 0.8}, GeomZetaSplice{2.5, 5}, GeomZetaSplice{3.0, 20}, Zigzag{2.0, 0.5}, Zigzag{1.75, -0.3}};
    for (const auto& spec : specs) {
        CAPTURE(label(spec));
        const AlternativeLaw law(spec);
        double mass = 0.0;
        for (Count k = 1; k <= 2000; ++k) {
            mass += law.pmf(k);
            if (k % 97 == 0) {
                CHECK(law.sf(k) == doctest::Approx(1.0 - mass).epsilon(1e-9).scale(1.0));
            }
        }
        CHECK(mass + law.sf(2000) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("alternative examples") {
    CHECK(alt_pmf(Zipf{2.0, 3}, 2) == doctest::Approx(9.0 / 49.0).epsilon(1e-14));
    CHECK(alt_pmf(Zipf{2.0, 3}, 4) == 0.0);
    // mean of the matched geometric equals ζ(2)/ζ(3)
    const AlternativeLaw geom(GeomMatched{3.0});
    double mean = 0.0;
    for (Count k = 1; k < 200; ++k) {
        mean += static_cast<double>(k) * geom.pmf(k);
    }
    CHECK(mean == doctest::Approx(1.3684327).epsilon(1e-7));
    // the splice heads coincide with their left family
    const AlternativeLaw zg(ZetaGeomSplice{3.0, 10, 0.4});
    const auto z3 = ZetaModel::make(3.0);
    for (Count k = 1; k <= 10; ++k) {
        CHECK(zg.pmf(k) == doctest::Approx(zeta_pmf(z3, k)).epsilon(1e-14));
    }
    CHECK(zg.pmf(12) / zg.pmf(11) == doctest::Approx(0.6).epsilon(1e-13));
    const AlternativeLaw gz(GeomZetaSplice{2.5, 5});
    for (Count k = 1; k <= 5; ++k) {
        CHECK(gz.pmf(k) == doctest::Approx(AlternativeLaw(GeomMatched{2.5}).pmf(k)).epsilon(1e-14));
    }
    CHECK(gz.pmf(7) / gz.pmf(6) == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-13));
    const AlternativeLaw zig(Zigzag{2.0, 0.5});
    CHECK(zig.pmf(2) / zig.pmf(1) == doctest::Approx(1.5 / 0.5 / 4.0).epsilon(1e-14));
}

TEST_CASE("alternative mean log matches direct sums") {
    const std::vector<AlternativeSpec> specs = {ZetaAlt{2.5},           GeomMatched{3.0},   Zipf{2.0, 10},
                                                ZetaGeomSplice{3, 10, 0.2}, GeomZetaSplice{3.0, 5}, Zigzag{2.5, 0.5}};
    for (const auto& spec : specs) {
        CAPTURE(label(spec));
        const AlternativeLaw law(spec);
        double direct = 0.0;
        const Count K = 4'000'000;
        for (Count k = K; k >= 2; --k) {
            direct += std::log(static_cast<double>(k)) * law.pmf(k);
        }
        CHECK(law.mean_log() == doctest::Approx(direct).epsilon(2e-6));
    }
}

TEST_CASE("alternative samplers match their pmfs") {
    const std::vector<AlternativeSpec> specs = {GeomMatched{3.0}, Zipf{1.5, 10}, ZetaGeomSplice{2.0, 5, 0.4},
                                                GeomZetaSplice{2.5, 10}, Zigzag{2.0, 0.5}, Zigzag{3.0, -0.4}};
    std::uint32_t stream = 0;
    for (const auto& spec : specs) {
        CAPTURE(label(spec));
        const AlternativeLaw law(spec);
        RngStream rng(5, stream++);
        const Sample x = law.sample(100000, rng);
        Count K = 25;
        while (K > 2 && law.pmf(K - 1) * 100000 < 5) {
            --K;
        }
        CHECK(chi_square(x, [&](Count k) { return law.pmf(k); }, K) < loose_bound(static_cast<double>(K - 1)));
    }
}

TEST_CASE("alternative labels round-trip") {
    for (const char* text : {"Zeta(2)", "Geom(3)", "Zipf(2,10)", "ZG(3,10,0.2)", "GZ(2.5,5)", "Zigzag(2,0.5)"}) {
        CHECK(label(parse_alternative(text)) == text);
    }
    CHECK(label(parse_alternative("zigzag( 1.75 , 0.1 )")) == "Zigzag(1.75,0.1)");
    CHECK_THROWS_AS(parse_alternative("Poisson(2)"), DomainError);
    CHECK_THROWS_AS(parse_alternative("Zipf(2)"), DomainError);
    CHECK_THROWS_AS(validate(GeomMatched{2.0}), DomainError);
    CHECK_THROWS_AS(validate(Zigzag{2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(validate(ZetaGeomSplice{2.0, 5, 0.0}), DomainError);
}
