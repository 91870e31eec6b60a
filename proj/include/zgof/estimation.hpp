#pragma once

#include <utility>

#include "zgof/distributions.hpp"

namespace zgof {

struct MleResult {
    double s_hat = 0.0;
    int iterations = 0;
    bool converged = false;
    std::pair<double, double> bracket{0.0, 0.0};
    /// ζ'(ŝ)/ζ(ŝ) + mean log X at the returned root.
    double residual = 0.0;
};

struct MleOptions {
    double s_max = 50.0;
    /// Largest upper bracket tried before BracketError.
    double s_ceiling = 200.0;
    /// Accepted |score-equation residual|.
    double tol = 1e-10;
};

/// Zeta score u(x; s) = −log x − ζ'(s)/ζ(s).
double score(Count x, double s);

/// I(s) = ζ''/ζ − (ζ'/ζ)^2 = Var(log X) under Zeta(s).
double fisher_information(double s);

/// Solve ζ'(s)/ζ(s) = −mean_log on (1, s_max], expanding s_max up to the ceiling.
/// Throws DegenerateSample when mean_log == 0 and BracketError past the ceiling.
MleResult solve_score_equation(double mean_log, const MleOptions& options = {});

MleResult mle_fit(const Sample& sample, const MleOptions& options = {});
MleResult mle_fit(const Tally& tally, const MleOptions& options = {});

/// ŝ from mle_fit, or s_max when the sample is degenerate or the root lies
/// past the ceiling. `capped` reports which branch was taken.
double mle_or_cap(const Tally& tally, const MleOptions& options, bool& capped);

/// Almost-sure limit of the MLE under `spec`: the root of ζ'(s)/ζ(s) = −E[log X].
double kl_projection(const AlternativeSpec& spec, const MleOptions& options = {});

/// Linearised estimator I(s0)^{-1} n^{-1/2} Σ u(X_i; s0); compares with √n(ŝ − s0).
double bahadur_linearization(const Sample& sample, double s0);

} // namespace zgof
