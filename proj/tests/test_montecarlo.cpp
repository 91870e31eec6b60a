#include <doctest.h>

#include <cmath>

#include "zgof/errors.hpp"
#include "zgof/montecarlo.hpp"
#include "zgof/stein.hpp"

using namespace zgof;

TEST_CASE("statistic identifiers") {
    CHECK(StatisticId::parse("stein:0").label() == "stein:0");
    CHECK(StatisticId::parse("stein:2.5").beta == 2.5);
    CHECK(StatisticId::parse("meintanis:3").kind == StatisticId::Kind::Meintanis);
    CHECK(StatisticId::parse("cvm").kind == StatisticId::Kind::Cvm);
    CHECK(StatisticId::parse("ksd").label() == "ksd");
    CHECK(StatisticId::parse("ben").label() == "ben");
    CHECK_THROWS_AS(StatisticId::parse("stein:-1"), DomainError);
    CHECK_THROWS_AS(StatisticId::parse("meintanis:0"), DomainError);
    CHECK_THROWS_AS(StatisticId::parse("meintanis"), DomainError);
    CHECK_THROWS_AS(StatisticId::parse("anderson"), DomainError);
    CHECK_THROWS_AS(StatisticId::parse("cvm:1"), DomainError);
}

TEST_CASE("order-statistic critical value") {
    std::vector<double> v;
    for (int i = 1; i <= 20; ++i) {
        v.push_back(21 - i);  // 20, 19, ..., 1
    }
    CHECK(bootstrap_critical_value(v, 0.05) == 19.0);  // b(1−α) = 19 exactly
    CHECK(bootstrap_critical_value(v, 0.5) == 10.0);
    CHECK(bootstrap_critical_value(v, 0.07) == 19.0);  // 18.6 → 19
    CHECK(bootstrap_critical_value(v, 0.0) == 20.0);
    std::vector<double> w(199);
    for (int i = 0; i < 199; ++i) {
        w[i] = i + 1;
    }
    CHECK(bootstrap_critical_value(w, 0.05) == 190.0);  // 189.05 → 190
    CHECK_THROWS_AS(bootstrap_critical_value(w, 1.0), DomainError);
    CHECK_THROWS_AS(bootstrap_critical_value({}, 0.05), DomainError);
}

TEST_CASE("bootstrap test is deterministic and thread-count independent") {
    RngStream rng(8, 0);
    const Sample x = sample_zeta(ZetaModel::make(2.0), 100, rng);
    BootstrapConfig config;
    config.b = 99;
    config.master_seed = 77;
    config.threads = 1;
    const auto one = bootstrap_test(x, StatisticId::parse("stein:0"), config);
    config.threads = 3;
    const auto three = bootstrap_test(x, StatisticId::parse("stein:0"), config);
    CHECK(one.statistic == three.statistic);
    CHECK(one.critical_value == three.critical_value);
    CHECK(one.p_value == three.p_value);
    CHECK(one.p_value > 0.0);
    CHECK(one.p_value <= 1.0);
    CHECK(one.reject == (one.statistic > one.critical_value));
    CHECK(one.s_hat == doctest::Approx(mle_fit(x).s_hat));
    CHECK(one.statistic == doctest::Approx(statistic_closed_form(x, one.s_hat, WeightBeta(0.0)).value));
}

TEST_CASE("bootstrap detects a strong alternative") {
    RngStream rng(9, 0);
    const Sample x = AlternativeLaw(Zigzag{2.0, 0.5}).sample(300, rng);
    BootstrapConfig config;
    config.b = 99;
    const auto out = bootstrap_test(x, StatisticId::parse("stein:0"), config);
    CHECK(out.reject);
    CHECK(out.p_value == doctest::Approx(0.01));
}

TEST_CASE("bootstrap rejects degenerate data and bad configs") {
    BootstrapConfig config;
    CHECK_THROWS_AS(bootstrap_test(Sample(std::vector<Count>(20, 1)), StatisticId{}, config), DegenerateSample);
    config.alpha = 1.0;
    CHECK_THROWS_AS(config.validate(), DomainError);
    config.alpha = 0.05;
    config.b = 0;
    CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("warp-speed smoke run") {
    SimulationConfig config;
    config.n = 50;
    config.replications = 1;
    config.alternatives = {ZetaAlt{2.0}, Zigzag{2.0, 0.5}};
    config.statistics = {StatisticId::parse("stein:0"), StatisticId::parse("ben")};
    config.threads = 1;
    const auto table = warp_speed_study(config);
    for (const auto& row : table.cells) {
        for (const auto& cell : row) {
            CHECK_UNARY(cell.rate == 0.0 || cell.rate == 100.0);
            CHECK(cell.se == 0.0);
        }
    }
    CHECK(table.to_csv() == warp_speed_study(config).to_csv());
}

TEST_CASE("warp-speed tables do not depend on the thread count") {
    SimulationConfig config;
    config.n = 60;
    config.replications = 150;
    config.alternatives = {ZetaAlt{2.0}, GeomMatched{3.0}};
    config.statistics = {StatisticId::parse("stein:1"), StatisticId::parse("cvm"), StatisticId::parse("ksd")};
    config.threads = 1;
    const auto serial = warp_speed_pools(config);
    config.threads = 4;
    const auto parallel = warp_speed_pools(config);
    CHECK(serial.original == parallel.original);
    CHECK(serial.resampled == parallel.resampled);
    CHECK(serial.degenerate == parallel.degenerate);
    const auto csv = warp_speed_study(config).to_csv();
    CHECK(csv.rfind("alternative,stein:1,cvm,ksd\nZeta(2),", 0) == 0);
}

TEST_CASE("capped fits are counted and flagged") {
    SimulationConfig config;
    config.n = 2;
    config.replications = 200;
    config.alternatives = {ZetaAlt{6.0}};  // P(both ones) is about 0.97
    config.statistics = {StatisticId::parse("stein:0")};
    config.threads = 1;
    const auto table = warp_speed_study(config);
    CHECK(table.degenerate[0] > 100);
    CHECK(table.flagged[0]);
}

TEST_CASE("simulation config validation") {
    SimulationConfig config;
    CHECK_THROWS_AS(config.validate(), DomainError);
    config.alternatives = {ZetaAlt{2.0}};
    config.statistics = {StatisticId{}};
    config.validate();
    config.replications = 0;
    CHECK_THROWS_AS(config.validate(), DomainError);
}
