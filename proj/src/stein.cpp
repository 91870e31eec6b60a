#include "zgof/stein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zgof/errors.hpp"
#include "zgof/numeric.hpp"
#include "zgof/quadrature.hpp"
#include "zgof/special.hpp"

namespace zgof {
namespace {

constexpr std::uint64_t kBetaTableSize = 4096;

// (x/(x−1))^s − 1 for x >= 2
double death_excess(double s, Count x) { return std::expm1(s * std::log1p(1.0 / static_cast<double>(x - 1))); }

// B(m, c), B(m, c+1), B(m, c+2) for integer m >= 1
class BetaTriples {
public:
    BetaTriples(double c, std::uint64_t max_m) : c_(c) {
        const std::uint64_t size = std::min(max_m, kBetaTableSize) + 1;
        table_.resize(size);
        table_[1] = 1.0 / c;
        for (std::uint64_t m = 1; m + 1 < size; ++m) {
            table_[m + 1] = table_[m] * static_cast<double>(m) / (static_cast<double>(m) + c);
        }
    }

    struct Triple {
        double b0, b1, b2;
    };

    Triple operator()(std::uint64_t m) const {
        const double dm = static_cast<double>(m);
        const double b0 = m < table_.size() ? table_[m] : std::exp(log_beta(dm, c_));
        const double b1 = b0 * c_ / (dm + c_);
        const double b2 = b1 * (c_ + 1.0) / (dm + c_ + 1.0);
        return {b0, b1, b2};
    }

private:
    double c_;
    std::vector<double> table_;
};

// Pair integral with every term nonnegative except the overall sign of the mixed case:
// (m_x − t)(m_y − t) = δ_x δ_y + (δ_x + δ_y)(1 − t) + (1 − t)^2 with δ = m − 1.
double pair_integral(const BetaTriples& beta, Count x, double dx, Count y, double dy) {
    if (x == 1 && y == 1) {
        return beta(3).b0;
    }
    if (x == 1 || y == 1) {
        const Count v = (x == 1) ? y : x;
        const double d = (x == 1) ? dy : dx;
        const auto b = beta(v + 1);
        return -(d * b.b0 + b.b1);
    }
    const auto b = beta(x + y - 1);
    return dx * dy * b.b0 + (dx + dy) * b.b1 + b.b2;
}

void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("t must lie in [0, 1]");
    }
}

} // namespace

WeightBeta::WeightBeta(double beta) : beta_(beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("weight exponent beta must be a finite nonnegative number");
    }
}

double stein_feature(double s, Count x, double t) {
    require_unit(t);
    if (x < 1) {
        throw DomainError("stein_feature: x must be a positive integer");
    }
    if (x == 1) {
        return -t * (1.0 - t);
    }
    const double power = std::pow(t, static_cast<double>(x - 1));
    return (1.0 - t) * power * (std::exp(s * std::log1p(1.0 / static_cast<double>(x - 1))) - t);
}

double stein_feature_ds(double s, Count x, double t) {
    require_unit(t);
    if (x < 1) {
        throw DomainError("stein_feature_ds: x must be a positive integer");
    }
    if (x == 1) {
        return 0.0;
    }
    const double log_ratio = std::log1p(1.0 / static_cast<double>(x - 1));
    return (1.0 - t) * std::pow(t, static_cast<double>(x - 1)) * std::exp(s * log_ratio) * log_ratio;
}

double empirical_process(const Tally& tally, double s, double t) {
    CompensatedSum sum;
    for (std::size_t a = 0; a < tally.distinct(); ++a) {
        sum += static_cast<double>(tally.counts[a]) * stein_feature(s, tally.values[a], t);
    }
    return sum.value() / std::sqrt(static_cast<double>(tally.n));
}

double empirical_process(const Sample& sample, double s, double t) { return empirical_process(Tally::of(sample), s, t); }

double stein_kernel(double s, Count x, Count y, double beta) {
    if (x < 1 || y < 1) {
        throw DomainError("stein_kernel: arguments must be positive integers");
    }
    const BetaTriples table(3.0 + WeightBeta(beta).value(), 0);
    const double dx = x >= 2 ? death_excess(s, x) : 0.0;
    const double dy = y >= 2 ? death_excess(s, y) : 0.0;
    return pair_integral(table, x, dx, y, dy);
}

SteinStatistic statistic_closed_form(const Tally& tally, double s_hat, WeightBeta beta) {
    if (!(s_hat > 1.0)) {
        throw DomainError("statistic_closed_form: s_hat must exceed 1");
    }
    const std::size_t d = tally.distinct();
    const BetaTriples table(3.0 + beta.value(), 2 * tally.max() + 1);
    std::vector<double> excess(d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
        if (tally.values[a] >= 2) {
            excess[a] = death_excess(s_hat, tally.values[a]);
        }
    }
    CompensatedSum sum;
    for (std::size_t a = 0; a < d; ++a) {
        const double ca = static_cast<double>(tally.counts[a]);
        sum += ca * ca * pair_integral(table, tally.values[a], excess[a], tally.values[a], excess[a]);
        for (std::size_t b = a + 1; b < d; ++b) {
            const double cb = static_cast<double>(tally.counts[b]);
            sum += 2.0 * ca * cb * pair_integral(table, tally.values[a], excess[a], tally.values[b], excess[b]);
        }
    }
    const double value = std::max(0.0, sum.value() / static_cast<double>(tally.n));
    return {value, beta, s_hat, tally.n};
}

SteinStatistic statistic_closed_form(const Sample& sample, double s_hat, WeightBeta beta) {
    return statistic_closed_form(Tally::of(sample), s_hat, beta);
}

SteinStatistic statistic_quadrature(const Tally& tally, double s_hat, WeightBeta beta, int nodes) {
    if (nodes < 32) {
        throw DomainError("statistic_quadrature: at least 32 nodes required");
    }
    if (!(s_hat > 1.0)) {
        throw DomainError("statistic_quadrature: s_hat must exceed 1");
    }
    const QuadratureRule rule = gauss_jacobi_unit(nodes, beta.value());
    CompensatedSum sum;
    for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
        const double z = empirical_process(tally, s_hat, rule.nodes[q]);
        sum += rule.weights[q] * z * z;
    }
    return {sum.value(), beta, s_hat, tally.n};
}

SteinStatistic statistic_quadrature(const Sample& sample, double s_hat, WeightBeta beta, int nodes) {
    return statistic_quadrature(Tally::of(sample), s_hat, beta, nodes);
}

double population_stein_mean(const AlternativeLaw& law, double s0, double t) {
    require_unit(t);
    if (!(s0 > 1.0)) {
        throw DomainError("population_stein_mean: s0 must exceed 1");
    }
    if (t == 0.0 || t == 1.0) {
        return 0.0;
    }
    // |feature(k, t)| <= (2^{s0} + 1) t^{k−1}, so the tail past K is below (2^{s0}+1) t^K.
    const double bound = std::exp2(s0) + 1.0;
    const double log_t = std::log(t);
    const Count last = law.support_max();
    CompensatedSum sum;
    for (Count k = 1; k <= last; ++k) {
        sum += law.pmf(k) * stein_feature(s0, k, t);
        if (bound * std::exp(static_cast<double>(k) * log_t) < 1e-17) {
            break;
        }
    }
    return sum.value();
}

double population_discrepancy(const AlternativeSpec& spec, double s0, WeightBeta beta, int nodes) {
    const AlternativeLaw law(spec);
    const QuadratureRule rule = gauss_jacobi_unit(nodes, beta.value());
    CompensatedSum sum;
    for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
        const double mean = population_stein_mean(law, s0, rule.nodes[q]);
        sum += rule.weights[q] * mean * mean;
    }
    return sum.value();
}

} // namespace zgof
