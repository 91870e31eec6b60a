#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zgof/distributions.hpp"
#include "zgof/estimation.hpp"

namespace zgof {

/// A test statistic selectable from the command line and in study configs:
/// "stein:β", "cvm", "ksd", "meintanis:β", "ben".
struct StatisticId {
    enum class Kind { Stein, Cvm, Ksd, Meintanis, Ben };
    Kind kind = Kind::Stein;
    double beta = 0.0;

    static StatisticId parse(const std::string& text);
    std::string label() const;
    bool operator==(const StatisticId&) const = default;
};

/// Statistic value on a sample with the plug-in estimate ŝ.
double evaluate_statistic(const StatisticId& id, const Tally& tally, double s_hat);

/// Resolve a thread-count hint: 0 means $GOF_THREADS, then hardware concurrency.
unsigned resolve_threads(unsigned hint);

struct BootstrapConfig {
    std::size_t b = 500;
    double alpha = 0.05;
    std::uint64_t master_seed = 0;
    double s_max = 50.0;
    unsigned threads = 1;

    void validate() const;
};

struct TestOutcome {
    StatisticId kind;
    double statistic = 0.0;
    double critical_value = 0.0;
    double p_value = 1.0;
    double s_hat = 0.0;
    bool reject = false;
    std::size_t b = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    /// Resamples whose refit hit the s_max cap (all ones or root past the ceiling).
    std::size_t capped_resamples = 0;
};

/// Empirical (1 − α)-quantile as an order statistic: index b(1−α) when that is an
/// integer, ⌊b(1−α)⌋ + 1 otherwise (1-based, ascending). α in [0, 1).
double bootstrap_critical_value(std::vector<double> resampled, double alpha);

/// Parametric bootstrap test of the Zeta family. Throws DegenerateSample when
/// the data admit no MLE.
TestOutcome bootstrap_test(const Sample& sample, const StatisticId& kind, const BootstrapConfig& config);

struct SimulationConfig {
    std::size_t n = 100;
    std::size_t replications = 2000;
    std::vector<AlternativeSpec> alternatives;
    std::vector<StatisticId> statistics;
    double alpha = 0.05;
    std::uint64_t master_seed = 1;
    double s_max = 50.0;
    unsigned threads = 0;

    void validate() const;
};

/// Per-cell statistic pools from a warp-speed run: original and one resample
/// per replication, indexed [alternative][statistic][replication].
struct WarpSpeedPools {
    std::vector<std::vector<std::vector<double>>> original;
    std::vector<std::vector<std::vector<double>>> resampled;
    std::vector<std::size_t> degenerate;  // capped fits per alternative
    std::vector<std::vector<double>> cell_seconds;
    double seconds = 0.0;
};

WarpSpeedPools warp_speed_pools(const SimulationConfig& config);

struct PowerCell {
    double rate = 0.0;  // percent
    double se = 0.0;    // percent
    double critical_value = 0.0;
};

struct PowerTable {
    std::vector<std::string> rows;
    std::vector<std::string> columns;
    std::vector<std::vector<PowerCell>> cells;
    std::vector<std::size_t> degenerate;
    std::vector<bool> flagged;
    std::vector<std::vector<double>> cell_seconds;
    std::size_t n = 0;
    std::size_t replications = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double seconds = 0.0;

    /// Rows = alternatives, columns = statistics, cells "rate±se"; contains no timings.
    std::string to_csv() const;
};

PowerTable warp_speed_study(const SimulationConfig& config);

} // namespace zgof
