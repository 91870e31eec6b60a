#include <doctest.h>

#include <sstream>

#include "zgof/errors.hpp"
#include "zgof/io.hpp"

using namespace zgof;

TEST_CASE("sample files round-trip in both formats") {
    const Sample x(std::vector<Count>{1, 4, 2, 18446744073709551615ull});
    for (auto format : {SampleFormat::Lines, SampleFormat::Csv}) {
        std::stringstream buffer;
        write_sample(buffer, x, format);
        const Sample y = read_sample(buffer);
        CHECK(std::vector<Count>(y.values().begin(), y.values().end()) ==
              std::vector<Count>(x.values().begin(), x.values().end()));
    }
}

TEST_CASE("sample parser errors") {
    std::istringstream zero("1\n0\n");
    CHECK_THROWS_AS(read_sample(zero), DomainError);
    std::istringstream negative("1\n-3\n");
    CHECK_THROWS_AS(read_sample(negative), DomainError);
    std::istringstream junk("x\n2.5\n");
    CHECK_THROWS_AS(read_sample(junk), DomainError);
    std::istringstream empty("x\n\n");
    CHECK_THROWS_AS(read_sample(empty), DomainError);
    std::istringstream crlf("x\r\n3\r\n\r\n5\r\n");
    CHECK(read_sample(crlf).size() == 2);
    CHECK_THROWS_AS(read_sample_file("/nonexistent/file"), DomainError);
}

TEST_CASE("JSON reports carry schema and version") {
    TestOutcome outcome;
    outcome.kind = StatisticId::parse("meintanis:2");
    outcome.seed = 12;
    const auto doc = to_json(outcome);
    CHECK(doc["schema"] == 1);
    CHECK(doc["version"] == version());
    CHECK(doc["statistic_id"] == "meintanis:2");
    CHECK(doc["seed"] == 12);
    EigenResult eigen;
    eigen.eigenvalues = {0.5, 0.1};
    CHECK(to_json(eigen)["eigenvalues"].size() == 2);
    const auto fit = to_json(fit_report(Sample(std::vector<Count>{1, 2, 3})));
    CHECK(fit["n"] == 3);
    CHECK(fit["s_hat"].get<double>() > 1.0);
}

TEST_CASE("study config parsing") {
    const auto doc = nlohmann::json::parse(R"js({"n": 50, "replications": 10, "seed": 4,
        "alternatives": ["Zeta(2)", "Zigzag(2,0.5)"], "statistics": ["stein:0", "ben"]})js");
    const auto config = simulation_config_from_json(doc);
    CHECK(config.n == 50);
    CHECK(config.replications == 10);
    CHECK(config.master_seed == 4);
    CHECK(config.alternatives.size() == 2);
    CHECK(config.statistics[1].kind == StatisticId::Kind::Ben);
    CHECK_THROWS_AS(simulation_config_from_json(nlohmann::json::parse(R"js({"alternatives": ["Zeta(2)"]})js")),
                    DomainError);
    CHECK_THROWS_AS(simulation_config_from_json(nlohmann::json::parse(
                        R"js({"alternatives": ["Geom(2)"], "statistics": ["cvm"]})js")),
                    DomainError);
}

TEST_CASE("power table CSV layout") {
    PowerTable table;
    table.rows = {"Zeta(2)"};
    table.columns = {"stein:0", "cvm"};
    table.cells = {{{5.0, 0.487, 0.1}, {100.0, 0.0, 0.2}}};
    CHECK(table.to_csv() == "alternative,stein:0,cvm\nZeta(2),5.00±0.49,100.00±0.00\n");
}
