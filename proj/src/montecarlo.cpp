#include "zgof/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "zgof/competitors.hpp"
#include "zgof/errors.hpp"
#include "zgof/parallel.hpp"
#include "zgof/stein.hpp"

namespace zgof {
namespace {

using Clock = std::chrono::steady_clock;

std::string shortest(double x) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
    return std::string(buffer, end);
}

std::string fixed2(double x) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::fixed, 2);
    return std::string(buffer, end);
}

double parse_beta(const std::string& text, const std::string& whole) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError("cannot parse statistic '" + whole + "'");
    }
    return value;
}

} // namespace

StatisticId StatisticId::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const bool has_arg = colon != std::string::npos;
    StatisticId id;
    if (name == "stein") {
        id.kind = Kind::Stein;
        id.beta = has_arg ? parse_beta(text.substr(colon + 1), text) : 0.0;
        (void)WeightBeta(id.beta);
    } else if (name == "meintanis") {
        id.kind = Kind::Meintanis;
        if (!has_arg) {
            throw DomainError("statistic 'meintanis' needs a weight, e.g. meintanis:1");
        }
        id.beta = parse_beta(text.substr(colon + 1), text);
        if (!(id.beta > 0.0)) {
            throw DomainError("meintanis weight must be positive");
        }
    } else if (!has_arg && name == "cvm") {
        id.kind = Kind::Cvm;
    } else if (!has_arg && name == "ksd") {
        id.kind = Kind::Ksd;
    } else if (!has_arg && name == "ben") {
        id.kind = Kind::Ben;
    } else {
        throw DomainError("unknown statistic '" + text + "'");
    }
    return id;
}

std::string StatisticId::label() const {
    switch (kind) {
    case Kind::Stein:
        return "stein:" + shortest(beta);
    case Kind::Meintanis:
        return "meintanis:" + shortest(beta);
    case Kind::Cvm:
        return "cvm";
    case Kind::Ksd:
        return "ksd";
    case Kind::Ben:
        return "ben";
    }
    return "?";
}

double evaluate_statistic(const StatisticId& id, const Tally& tally, double s_hat) {
    switch (id.kind) {
    case StatisticId::Kind::Stein:
        return statistic_closed_form(tally, s_hat, WeightBeta(id.beta)).value;
    case StatisticId::Kind::Cvm:
        return cvm_henze(tally, s_hat);
    case StatisticId::Kind::Ksd:
        return ksd_yang(tally, s_hat);
    case StatisticId::Kind::Meintanis:
        return meintanis(tally, s_hat, id.beta);
    case StatisticId::Kind::Ben:
        return ben_statistic(tally, s_hat);
    }
    throw DomainError("unknown statistic kind");
}

unsigned resolve_threads(unsigned hint) {
    if (hint > 0) {
        return hint;
    }
    if (const char* env = std::getenv("GOF_THREADS")) {
        const int value = std::atoi(env);
        if (value > 0) {
            return static_cast<unsigned>(value);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void BootstrapConfig::validate() const {
    if (b < 1) {
        throw DomainError("bootstrap: b must be at least 1");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("bootstrap: alpha must lie in [0, 1)");
    }
    if (!(s_max > 1.0)) {
        throw DomainError("bootstrap: s_max must exceed 1");
    }
}

double bootstrap_critical_value(std::vector<double> resampled, double alpha) {
    if (resampled.empty()) {
        throw DomainError("bootstrap_critical_value: no resampled statistics");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("bootstrap_critical_value: alpha must lie in [0, 1)");
    }
    std::sort(resampled.begin(), resampled.end());
    const double b = static_cast<double>(resampled.size());
    const double position = b * (1.0 - alpha);
    const double nearest = std::round(position);
    std::size_t index = std::abs(position - nearest) < 1e-9 * std::max(1.0, position)
                            ? static_cast<std::size_t>(nearest)
                            : static_cast<std::size_t>(std::floor(position)) + 1;
    index = std::clamp<std::size_t>(index, 1, resampled.size());
    return resampled[index - 1];
}

TestOutcome bootstrap_test(const Sample& sample, const StatisticId& kind, const BootstrapConfig& config) {
    config.validate();
    const Tally tally = Tally::of(sample);
    MleOptions options;
    options.s_max = config.s_max;
    const double s_hat = mle_fit(tally, options).s_hat;
    const ZetaModel fitted = ZetaModel::make(s_hat);

    TestOutcome out;
    out.kind = kind;
    out.s_hat = s_hat;
    out.statistic = evaluate_statistic(kind, tally, s_hat);
    out.b = config.b;
    out.alpha = config.alpha;
    out.seed = config.master_seed;

    std::vector<double> resampled(config.b);
    std::atomic<std::size_t> capped{0};
    parallel_for(config.b, resolve_threads(config.threads), [&](std::size_t i, unsigned) {
        RngStream rng(config.master_seed, RngStream::stream_id(static_cast<std::uint32_t>(i), 0));
        const Tally boot = Tally::of(sample_zeta(fitted, sample.size(), rng));
        bool was_capped = false;
        const double s_star = mle_or_cap(boot, options, was_capped);
        if (was_capped) {
            ++capped;
        }
        resampled[i] = evaluate_statistic(kind, boot, s_star);
    });
    out.capped_resamples = capped;

    const auto exceed = std::count_if(resampled.begin(), resampled.end(),
                                      [&](double t) { return t >= out.statistic; });
    out.p_value = (1.0 + static_cast<double>(exceed)) / (static_cast<double>(config.b) + 1.0);
    out.critical_value = bootstrap_critical_value(std::move(resampled), config.alpha);
    out.reject = out.statistic > out.critical_value;
    return out;
}

void SimulationConfig::validate() const {
    if (replications < 1) {
        throw DomainError("simulation: replications must be at least 1");
    }
    if (n < 2) {
        throw DomainError("simulation: sample size must be at least 2");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("simulation: alpha must lie in [0, 1)");
    }
    if (!(s_max > 1.0)) {
        throw DomainError("simulation: s_max must exceed 1");
    }
    if (alternatives.empty() || statistics.empty()) {
        throw DomainError("simulation: need at least one alternative and one statistic");
    }
    for (const auto& spec : alternatives) {
        zgof::validate(spec);
    }
}

WarpSpeedPools warp_speed_pools(const SimulationConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const std::size_t rows = config.alternatives.size();
    const std::size_t cols = config.statistics.size();
    const std::size_t M = config.replications;

    std::vector<AlternativeLaw> laws;
    laws.reserve(rows);
    for (const auto& spec : config.alternatives) {
        laws.emplace_back(spec);
    }

    WarpSpeedPools pools;
    pools.original.assign(rows, std::vector<std::vector<double>>(cols, std::vector<double>(M)));
    pools.resampled = pools.original;
    pools.cell_seconds.assign(rows, std::vector<double>(cols, 0.0));
    std::vector<std::atomic<std::size_t>> degenerate(rows);

    const unsigned threads = resolve_threads(config.threads);
    std::vector<std::vector<std::vector<double>>> worker_seconds(
        threads, std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0)));

    MleOptions options;
    options.s_max = config.s_max;

    parallel_for(rows * M, threads, [&](std::size_t index, unsigned worker) {
        const std::size_t a = index / M;
        const std::size_t m = index % M;
        RngStream rng(config.master_seed,
                      RngStream::stream_id(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(a)));
        const Tally data = Tally::of(laws[a].sample(config.n, rng));
        bool capped = false;
        const double s_hat = mle_or_cap(data, options, capped);
        std::size_t events = capped ? 1 : 0;

        const Tally boot = Tally::of(sample_zeta(ZetaModel::make(s_hat), config.n, rng));
        const double s_star = mle_or_cap(boot, options, capped);
        events += capped ? 1 : 0;
        if (events > 0) {
            degenerate[a] += events;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const auto t0 = Clock::now();
            pools.original[a][j][m] = evaluate_statistic(config.statistics[j], data, s_hat);
            pools.resampled[a][j][m] = evaluate_statistic(config.statistics[j], boot, s_star);
            worker_seconds[worker][a][j] += std::chrono::duration<double>(Clock::now() - t0).count();
        }
    });

    for (std::size_t a = 0; a < rows; ++a) {
        pools.degenerate.push_back(degenerate[a]);
        for (std::size_t j = 0; j < cols; ++j) {
            for (const auto& w : worker_seconds) {
                pools.cell_seconds[a][j] += w[a][j];
            }
        }
    }
    pools.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return pools;
}

PowerTable warp_speed_study(const SimulationConfig& config) {
    const WarpSpeedPools pools = warp_speed_pools(config);
    PowerTable table;
    table.n = config.n;
    table.replications = config.replications;
    table.alpha = config.alpha;
    table.seed = config.master_seed;
    table.seconds = pools.seconds;
    table.cell_seconds = pools.cell_seconds;
    table.degenerate = pools.degenerate;
    for (const auto& spec : config.alternatives) {
        table.rows.push_back(label(spec));
    }
    for (const auto& id : config.statistics) {
        table.columns.push_back(id.label());
    }
    const double M = static_cast<double>(config.replications);
    for (std::size_t a = 0; a < table.rows.size(); ++a) {
        std::vector<PowerCell> row;
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            PowerCell cell;
            cell.critical_value = bootstrap_critical_value(pools.resampled[a][j], config.alpha);
            const auto& original = pools.original[a][j];
            const auto rejected =
                std::count_if(original.begin(), original.end(), [&](double t) { return t > cell.critical_value; });
            const double p = static_cast<double>(rejected) / M;
            cell.rate = 100.0 * p;
            cell.se = 100.0 * std::sqrt(p * (1.0 - p) / M);
            row.push_back(cell);
        }
        table.cells.push_back(std::move(row));
        table.flagged.push_back(static_cast<double>(table.degenerate[a]) > 0.01 * M);
    }
    return table;
}

std::string PowerTable::to_csv() const {
    std::ostringstream out;
    out << "alternative";
    for (const auto& c : columns) {
        out << ',' << c;
    }
    out << '\n';
    for (std::size_t a = 0; a < rows.size(); ++a) {
        out << rows[a];
        for (const auto& cell : cells[a]) {
            out << ',' << fixed2(cell.rate) << "±" << fixed2(cell.se);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace zgof
