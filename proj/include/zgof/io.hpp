#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "zgof/estimation.hpp"
#include "zgof/montecarlo.hpp"
#include "zgof/spectral.hpp"

namespace zgof {

std::string version();

/// One positive integer per line, or a one-column CSV whose header is "x".
/// Blank lines are skipped. Throws DomainError with the line number on bad input.
Sample read_sample(std::istream& in);
Sample read_sample_file(const std::string& path);

enum class SampleFormat { Lines, Csv };
void write_sample(std::ostream& out, const Sample& sample, SampleFormat format = SampleFormat::Lines);

struct FitReport {
    MleResult mle;
    std::size_t n = 0;
    double std_error = 0.0;      // 1/√(n I(ŝ))
    double log_likelihood = 0.0;
};

FitReport fit_report(const Sample& sample, const MleOptions& options = {});

nlohmann::json to_json(const FitReport& report);
nlohmann::json to_json(const TestOutcome& outcome);
nlohmann::json to_json(const PowerTable& table);
nlohmann::json to_json(const EigenResult& result);

/// Two-line CSV (header + values) for a test outcome.
std::string to_csv(const TestOutcome& outcome);

/// Study config:
/// {"n": 100, "replications": 2000, "alpha": 0.05, "seed": 1, "s_max": 50,
///  "alternatives": ["Zeta(2)", "Geom(3)"], "statistics": ["stein:0", "cvm"]}
SimulationConfig simulation_config_from_json(const nlohmann::json& doc);
SimulationConfig read_simulation_config(const std::string& path);

} // namespace zgof
