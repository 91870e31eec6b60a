#include "zgof/estimation.hpp"

#include <cmath>
#include <numeric>

#include "zgof/errors.hpp"
#include "zgof/roots.hpp"

namespace zgof {
namespace {

constexpr double kLowerBracket = 1.0 + 1e-6;

double log_derivative(double s) {
    const ZetaValues z = zeta_all(s);
    return z.d1 / z.value;
}

} // namespace

double score(Count x, double s) {
    if (x < 1) {
        throw DomainError("score: x must be a positive integer");
    }
    if (!(s > 1.0)) {
        throw DomainError("score: s must exceed 1");
    }
    return -std::log(static_cast<double>(x)) - log_derivative(s);
}

double fisher_information(double s) {
    if (!(s > 1.0)) {
        throw DomainError("fisher_information: s must exceed 1");
    }
    const ZetaValues z = zeta_all(s);
    const double ratio = z.d1 / z.value;
    return z.d2 / z.value - ratio * ratio;
}

MleResult solve_score_equation(double mean_log, const MleOptions& options) {
    if (!(options.tol > 0.0)) {
        throw DomainError("mle: tol must be positive");
    }
    if (!(options.s_max > 1.0)) {
        throw DomainError("mle: s_max must exceed 1");
    }
    if (!(mean_log > 0.0)) {
        throw DegenerateSample();
    }
    auto g = [mean_log](double s) { return log_derivative(s) + mean_log; };

    const double lo = kLowerBracket;
    const double g_lo = g(lo);
    double hi = options.s_max;
    double g_hi = g(hi);
    while (g_hi < 0.0 && hi < options.s_ceiling) {
        hi = std::min(2.0 * hi, options.s_ceiling);
        g_hi = g(hi);
    }
    if (g_hi < 0.0) {
        throw BracketError("mle: score-equation root exceeds s = " + std::to_string(hi));
    }
    if (g_lo > 0.0) {
        throw BracketError("mle: score-equation root lies below s = 1 + 1e-6");
    }
    const RootResult root = brent_root(g, lo, hi, g_lo, g_hi, options.tol);
    MleResult out;
    out.s_hat = root.x;
    out.iterations = root.iterations;
    out.converged = root.converged;
    out.bracket = {lo, hi};
    out.residual = root.fx;
    return out;
}

MleResult mle_fit(const Tally& tally, const MleOptions& options) { return solve_score_equation(tally.mean_log, options); }

MleResult mle_fit(const Sample& sample, const MleOptions& options) {
    if (sample.empty()) {
        throw DomainError("mle_fit: empty sample");
    }
    return mle_fit(Tally::of(sample), options);
}

double mle_or_cap(const Tally& tally, const MleOptions& options, bool& capped) {
    capped = false;
    try {
        return mle_fit(tally, options).s_hat;
    } catch (const DegenerateSample&) {
    } catch (const BracketError&) {
    }
    capped = true;
    return options.s_max;
}

double kl_projection(const AlternativeSpec& spec, const MleOptions& options) {
    return solve_score_equation(AlternativeLaw(spec).mean_log(), options).s_hat;
}

double bahadur_linearization(const Sample& sample, double s0) {
    if (sample.empty()) {
        throw DomainError("bahadur_linearization: empty sample");
    }
    const double ratio = log_derivative(s0);
    double sum = 0.0;
    for (Count x : sample.values()) {
        sum += -std::log(static_cast<double>(x)) - ratio;
    }
    return sum / std::sqrt(static_cast<double>(sample.size())) / fisher_information(s0);
}

} // namespace zgof
