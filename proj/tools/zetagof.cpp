// zetagof: fit / test / simulate / eigen / sample

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "zgof/errors.hpp"
#include "zgof/io.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitReject = 10;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw zgof::DomainError("cannot write '" + path + "'");
    }
    out << text;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goodness-of-fit tests for the Zeta distribution"};
    app.set_version_flag("--version", zgof::version());
    app.require_subcommand(1);

    std::string input;
    std::string format = "text";
    std::string out_path;
    double s_max = 50.0;

    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of Zeta(s)");
    fit->add_option("file", input, "Sample file")->required();
    fit->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    fit->add_option("--s-max", s_max, "Initial upper bracket for s");

    std::string stat = "stein:0";
    zgof::BootstrapConfig boot;
    boot.threads = 0;
    auto* test = app.add_subcommand("test", "Parametric bootstrap test");
    test->add_option("file", input, "Sample file")->required();
    test->add_option("--stat", stat, "stein:BETA, cvm, ksd, meintanis:BETA or ben");
    test->add_option("--b", boot.b, "Bootstrap resamples");
    test->add_option("--alpha", boot.alpha, "Level");
    test->add_option("--seed", boot.master_seed, "Master seed");
    test->add_option("--threads", boot.threads, "Worker threads (0: $GOF_THREADS or all cores)");
    test->add_option("--s-max", boot.s_max, "Cap for degenerate resample fits");
    test->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

    std::string config_path;
    std::string out_dir = ".";
    unsigned sim_threads = 0;
    std::size_t replications = 0;
    std::int64_t sim_seed = -1;
    auto* simulate = app.add_subcommand("simulate", "Warp-speed power study");
    simulate->add_option("--config", config_path, "Study config (JSON)")->required();
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--threads", sim_threads, "Worker threads (0: $GOF_THREADS or all cores)");
    simulate->add_option("--replications", replications, "Override the config's replication count");
    simulate->add_option("--seed", sim_seed, "Override the config's master seed");

    double s0 = 2.0;
    double beta = 0.0;
    int dim = 20;
    int quad = 0;
    std::size_t kl_draws = 0;
    auto* eigen = app.add_subcommand("eigen", "Rayleigh-Ritz eigenvalues of the limit covariance operator");
    eigen->add_option("--s0", s0, "Shape parameter");
    eigen->add_option("--beta", beta, "Weight exponent");
    eigen->add_option("--dim", dim, "Basis dimension");
    eigen->add_option("--quad", quad, "Quadrature order (default max(2 dim, 64))");
    eigen->add_option("--quantile-draws", kl_draws, "Also report the 95% quantile of the truncated limit law");
    eigen->add_option("--out", out_path, "Output file (default stdout)");

    std::string dist = "Zeta(2)";
    std::size_t n = 100;
    std::uint64_t seed = 0;
    bool csv = false;
    auto* sample = app.add_subcommand("sample", "Draw a sample from Zeta or an alternative");
    sample->add_option("--dist", dist, "e.g. Zeta(2.5), Geom(3), Zipf(2,10), ZG(3,10,0.5), GZ(3,10), Zigzag(2,0.5)");
    sample->add_option("--n", n, "Sample size");
    sample->add_option("--seed", seed, "Seed");
    sample->add_flag("--csv", csv, "Write a CSV with header x");
    sample->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*fit) {
            zgof::MleOptions options;
            options.s_max = s_max;
            const auto report = zgof::fit_report(zgof::read_sample_file(input), options);
            if (format == "json") {
                std::cout << zgof::to_json(report).dump(2) << '\n';
            } else {
                std::cout << std::setprecision(10) << "n               " << report.n << '\n'
                          << "s_hat           " << report.mle.s_hat << '\n'
                          << "std_error       " << report.std_error << '\n'
                          << "log_likelihood  " << report.log_likelihood << '\n';
            }
            return 0;
        }
        if (*test) {
            const auto id = zgof::StatisticId::parse(stat);
            const auto outcome = zgof::bootstrap_test(zgof::read_sample_file(input), id, boot);
            if (format == "json") {
                std::cout << zgof::to_json(outcome).dump(2) << '\n';
            } else if (format == "csv") {
                std::cout << zgof::to_csv(outcome);
            } else {
                std::cout << std::setprecision(8) << outcome.kind.label() << "  T = " << outcome.statistic
                          << "  c* = " << outcome.critical_value << "  p = " << outcome.p_value
                          << "  s_hat = " << outcome.s_hat << "  b = " << outcome.b << "  seed = " << outcome.seed
                          << "  " << (outcome.reject ? "REJECT" : "accept") << '\n';
            }
            return outcome.reject ? kExitReject : 0;
        }
        if (*simulate) {
            auto config = zgof::read_simulation_config(config_path);
            if (replications > 0) {
                config.replications = replications;
            }
            if (sim_seed >= 0) {
                config.master_seed = static_cast<std::uint64_t>(sim_seed);
            }
            config.threads = sim_threads;
            const auto table = zgof::warp_speed_study(config);
            std::filesystem::create_directories(out_dir);
            const auto dir = std::filesystem::path(out_dir);
            write_text((dir / "power.csv").string(), table.to_csv());
            write_text((dir / "power.json").string(), zgof::to_json(table).dump(2) + "\n");
            std::cerr << std::fixed << std::setprecision(2);
            for (std::size_t a = 0; a < table.rows.size(); ++a) {
                for (std::size_t j = 0; j < table.columns.size(); ++j) {
                    const auto& cell = table.cells[a][j];
                    std::cerr << table.rows[a] << " / " << table.columns[j] << ": " << cell.rate << " (se "
                              << cell.se << ", " << table.cell_seconds[a][j] << " s)\n";
                }
                if (table.flagged[a]) {
                    std::cerr << table.rows[a] << ": " << table.degenerate[a]
                              << " capped fits, more than 1% of replications\n";
                }
            }
            std::cerr << "total " << table.seconds << " s, seed " << table.seed << '\n';
            return 0;
        }
        if (*eigen) {
            const zgof::CovarianceKernel kernel(s0, zgof::WeightBeta(beta));
            const auto result = zgof::rayleigh_ritz(kernel, dim, quad);
            auto doc = zgof::to_json(result);
            if (kl_draws > 0) {
                doc["quantile_95"] = zgof::limit_quantile(result.eigenvalues, 0.95, kl_draws, seed);
                doc["seed"] = seed;
            }
            emit(out_path, doc.dump(2) + "\n");
            return 0;
        }
        if (*sample) {
            const zgof::AlternativeLaw law(zgof::parse_alternative(dist));
            zgof::RngStream rng(seed, 0);
            std::ostringstream text;
            zgof::write_sample(text, law.sample(n, rng), csv ? zgof::SampleFormat::Csv : zgof::SampleFormat::Lines);
            emit(out_path, text.str());
            return 0;
        }
    } catch (const zgof::DegenerateSample& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const zgof::BracketError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
