#include "zgof/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zgof/errors.hpp"

#ifndef ZGOF_VERSION
#define ZGOF_VERSION "0.0.0"
#endif

namespace zgof {
namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::string kind_name(const StatisticId& id) { return id.label(); }

nlohmann::json header(const char* kind) {
    return {{"schema", 1}, {"kind", kind}, {"version", version()}};
}

// JSON has no infinities; encode non-finite values as null
nlohmann::json number(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

std::string version() { return ZGOF_VERSION; }

Sample read_sample(std::istream& in) {
    std::vector<Count> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string field = trim(line);
        if (field.empty()) {
            continue;
        }
        if (!seen_content) {
            seen_content = true;
            if (field == "x" || field == "\"x\"") {
                continue;
            }
        }
        Count value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw DomainError("line " + std::to_string(line_no) + ": expected a positive integer, got '" + field + "'");
        }
        if (value < 1) {
            throw DomainError("line " + std::to_string(line_no) + ": observations must be >= 1");
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw DomainError("sample is empty");
    }
    return Sample(std::move(values));
}

Sample read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    return read_sample(in);
}

void write_sample(std::ostream& out, const Sample& sample, SampleFormat format) {
    if (format == SampleFormat::Csv) {
        out << "x\n";
    }
    for (Count x : sample.values()) {
        out << x << '\n';
    }
}

FitReport fit_report(const Sample& sample, const MleOptions& options) {
    const Tally tally = Tally::of(sample);
    FitReport report;
    report.mle = mle_fit(tally, options);
    report.n = sample.size();
    const double s = report.mle.s_hat;
    const double n = static_cast<double>(report.n);
    report.std_error = 1.0 / std::sqrt(n * fisher_information(s));
    report.log_likelihood = -n * (s * tally.mean_log + std::log(zeta(s)));
    return report;
}

nlohmann::json to_json(const FitReport& report) {
    auto doc = header("fit");
    doc["n"] = report.n;
    doc["s_hat"] = report.mle.s_hat;
    doc["std_error"] = number(report.std_error);
    doc["log_likelihood"] = report.log_likelihood;
    doc["iterations"] = report.mle.iterations;
    doc["converged"] = report.mle.converged;
    doc["residual"] = report.mle.residual;
    return doc;
}

nlohmann::json to_json(const TestOutcome& outcome) {
    auto doc = header("test");
    doc["statistic_id"] = kind_name(outcome.kind);
    doc["statistic"] = outcome.statistic;
    doc["critical_value"] = outcome.critical_value;
    doc["p_value"] = outcome.p_value;
    doc["s_hat"] = outcome.s_hat;
    doc["reject"] = outcome.reject;
    doc["b"] = outcome.b;
    doc["alpha"] = outcome.alpha;
    doc["seed"] = outcome.seed;
    doc["capped_resamples"] = outcome.capped_resamples;
    return doc;
}

std::string to_csv(const TestOutcome& outcome) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << "statistic_id,statistic,critical_value,p_value,s_hat,reject,b,alpha,seed,capped_resamples\n";
    out << kind_name(outcome.kind) << ',' << outcome.statistic << ',' << outcome.critical_value << ','
        << outcome.p_value << ',' << outcome.s_hat << ',' << (outcome.reject ? "true" : "false") << ','
        << outcome.b << ',' << outcome.alpha << ',' << outcome.seed << ',' << outcome.capped_resamples << '\n';
    return out.str();
}

nlohmann::json to_json(const PowerTable& table) {
    auto doc = header("power_table");
    doc["n"] = table.n;
    doc["replications"] = table.replications;
    doc["b"] = 1;  // warp-speed: one resample per replication
    doc["alpha"] = table.alpha;
    doc["seed"] = table.seed;
    doc["seconds"] = table.seconds;
    doc["alternatives"] = table.rows;
    doc["statistics"] = table.columns;
    auto rows = nlohmann::json::array();
    for (std::size_t a = 0; a < table.rows.size(); ++a) {
        auto cells = nlohmann::json::array();
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            const auto& cell = table.cells[a][j];
            cells.push_back({{"statistic", table.columns[j]},
                             {"rate", cell.rate},
                             {"se", cell.se},
                             {"critical_value", cell.critical_value},
                             {"seconds", table.cell_seconds[a][j]}});
        }
        rows.push_back({{"alternative", table.rows[a]},
                        {"degenerate_fits", table.degenerate[a]},
                        {"flagged", static_cast<bool>(table.flagged[a])},
                        {"cells", cells}});
    }
    doc["rows"] = rows;
    return doc;
}

nlohmann::json to_json(const EigenResult& result) {
    auto doc = header("eigen");
    doc["s0"] = result.s0;
    doc["beta"] = result.beta;
    doc["dim"] = result.dim;
    doc["quad_order"] = result.quad_order;
    doc["eigenvalues"] = result.eigenvalues;
    doc["trace_reference"] = result.trace_reference;
    doc["trace_residual"] = result.trace_residual;
    doc["clip_mass"] = result.clip_mass;
    return doc;
}

SimulationConfig simulation_config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw DomainError("study config must be a JSON object");
    }
    SimulationConfig config;
    try {
        config.n = doc.value("n", config.n);
        config.replications = doc.value("replications", config.replications);
        config.alpha = doc.value("alpha", config.alpha);
        config.master_seed = doc.value("seed", config.master_seed);
        config.s_max = doc.value("s_max", config.s_max);
        for (const auto& text : doc.at("alternatives")) {
            config.alternatives.push_back(parse_alternative(text.get<std::string>()));
        }
        for (const auto& text : doc.at("statistics")) {
            config.statistics.push_back(StatisticId::parse(text.get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("study config: ") + e.what());
    }
    config.validate();
    return config;
}

SimulationConfig read_simulation_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
    return simulation_config_from_json(doc);
}

} // namespace zgof
