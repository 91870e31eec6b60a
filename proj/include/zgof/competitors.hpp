#pragma once

#include "zgof/distributions.hpp"

namespace zgof {

/// Cramér–von Mises statistic with empirical-pmf weights:
/// n Σ_k (F̂_n(k) − F(k; ŝ))^2 (F̂_n(k) − F̂_n(k−1)).
double cvm_henze(const Tally& tally, double s_hat);
double cvm_henze(const Sample& sample, double s_hat);

/// Discrete score of the KSD construction on {1..K}: 1 − (x/τ(x))^s, τ cyclic.
double ksd_score(Count x, Count support_max, double s_hat);

/// Stein kernel κ(x, x') of the KSD construction with Gaussian base kernel.
double ksd_kernel(Count x, Count y, Count support_max, double s_hat, double bandwidth = 1.0);

/// U-statistic (n(n−1))^{-1} Σ_{i≠j} κ(X_i, X_j) on the support {1..max X}; n >= 2.
double ksd_yang(const Tally& tally, double s_hat, double bandwidth = 1.0);
double ksd_yang(const Sample& sample, double s_hat, double bandwidth = 1.0);

struct MellinQuadrature {
    int nodes = 64;
    /// Node-doubling discrepancy above which adaptive Gauss–Kronrod takes over.
    double doubling_tol = 1e-9;
    double adaptive_rel_tol = 1e-10;
};

/// Empirical Mellin transform M_n(t) = n^{-1} Σ X_j^{-t}.
double empirical_mellin(const Tally& tally, double t);

/// n ∫_0^∞ [ζ(ŝ) M_n(t) − ζ(ŝ + t)]^2 e^{−βt} dt, β > 0.
double meintanis(const Tally& tally, double s_hat, double beta, const MellinQuadrature& quad = {});
double meintanis(const Sample& sample, double s_hat, double beta, const MellinQuadrature& quad = {});

/// e_n(k; ŝ) = n^{-1} Σ_j (1 − (X_j/(X_j+1))^ŝ) 1{X_j >= k}.
double characterization_mean(const Tally& tally, double s_hat, Count k);

/// Σ_{k=1}^{max X} (e_n(k; ŝ) − ρ_n(k))^2 with ρ_n the empirical pmf.
double ben_statistic(const Tally& tally, double s_hat);
double ben_statistic(const Sample& sample, double s_hat);

} // namespace zgof
