#pragma once

#include <cmath>
#include <cstdint>

#include "zgof/distributions.hpp"

namespace zgof {

/// Exponent of the weight w(t) = (1 − t)^beta, beta >= 0.
class WeightBeta {
public:
    explicit WeightBeta(double beta);
    double value() const { return beta_; }

private:
    double beta_;
};

struct SteinStatistic {
    double value = 0.0;
    WeightBeta beta{0.0};
    double s_used = 0.0;
    std::uint64_t n = 0;
};

/// Birth–death generator: λ_k (f(k+1) − f(k)) + μ_k (f(k−1) − f(k)) with
/// λ_k = 1, μ_k = (k/(k−1))^s and μ_1 = 0.
template <typename F>
double stein_operator_apply(F&& f, double s, Count k) {
    const double up = f(k + 1) - f(k);
    if (k == 1) {
        return up;
    }
    const double death = std::exp(s * std::log1p(1.0 / static_cast<double>(k - 1)));
    return up + death * (f(k - 1) - f(k));
}

/// The generator applied to t^x, evaluated at x:
/// −t(1−t) for x = 1, (1−t) t^{x−1} [(x/(x−1))^s − t] for x >= 2.
double stein_feature(double s, Count x, double t);

/// ∂/∂s of stein_feature: (1−t) t^{x−1} (x/(x−1))^s log(x/(x−1)) for x >= 2, else 0.
double stein_feature_ds(double s, Count x, double t);

/// n^{-1/2} Σ_i stein_feature(s, X_i, t).
double empirical_process(const Tally& tally, double s, double t);
double empirical_process(const Sample& sample, double s, double t);

/// ∫_0^1 stein_feature(s,x,t) stein_feature(s,y,t) (1−t)^beta dt in closed form.
double stein_kernel(double s, Count x, Count y, double beta);

/// ∫_0^1 Z_n(t; s)^2 (1−t)^beta dt as the Beta-function double sum over distinct values.
SteinStatistic statistic_closed_form(const Tally& tally, double s_hat, WeightBeta beta);
SteinStatistic statistic_closed_form(const Sample& sample, double s_hat, WeightBeta beta);

/// The same integral by Gauss–Jacobi quadrature (nodes >= 32).
SteinStatistic statistic_quadrature(const Tally& tally, double s_hat, WeightBeta beta, int nodes = 128);
SteinStatistic statistic_quadrature(const Sample& sample, double s_hat, WeightBeta beta, int nodes = 128);

/// E[stein_feature(s0, X, t)] under the law, truncated with an explicit tail bound.
double population_stein_mean(const AlternativeLaw& law, double s0, double t);

/// ∫ E[stein_feature(s0, X, t)]^2 (1−t)^beta dt.
double population_discrepancy(const AlternativeSpec& spec, double s0, WeightBeta beta, int nodes = 64);

} // namespace zgof
