#include "zgof/competitors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "zgof/errors.hpp"
#include "zgof/numeric.hpp"
#include "zgof/quadrature.hpp"
#include "zgof/special.hpp"

namespace zgof {
namespace {

constexpr Count kDirectCdfLimit = 64;

const QuadratureRule& laguerre_rule(int nodes) {
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        it = cache.emplace(nodes, gauss_laguerre(nodes)).first;
    }
    return it->second;
}

double gaussian(Count a, Count b, double bandwidth) {
    const double diff = a > b ? static_cast<double>(a - b) : static_cast<double>(b - a);
    const double z = diff / bandwidth;
    return std::exp(-0.5 * z * z);
}

void require_shape(double s_hat) {
    if (!(s_hat > 1.0)) {
        throw DomainError("plug-in estimate s_hat must exceed 1");
    }
}

} // namespace

double cvm_henze(const Tally& tally, double s_hat) {
    require_shape(s_hat);
    const double zeta_s = zeta(s_hat);
    const double n = static_cast<double>(tally.n);
    CompensatedSum sum;
    double cumulative = 0.0;
    double model_cdf = 0.0;
    Count summed_to = 0;
    for (std::size_t a = 0; a < tally.distinct(); ++a) {
        const Count v = tally.values[a];
        cumulative += static_cast<double>(tally.counts[a]);
        if (v <= kDirectCdfLimit) {
            for (; summed_to < v; ++summed_to) {
                model_cdf += std::exp(-s_hat * std::log(static_cast<double>(summed_to + 1))) / zeta_s;
            }
        } else {
            model_cdf = 1.0 - zeta_tail(s_hat, v + 1).value / zeta_s;
        }
        const double gap = cumulative / n - model_cdf;
        sum += static_cast<double>(tally.counts[a]) * gap * gap;
    }
    return sum.value();
}

double cvm_henze(const Sample& sample, double s_hat) { return cvm_henze(Tally::of(sample), s_hat); }

double ksd_score(Count x, Count support_max, double s_hat) {
    if (x < support_max) {
        return -std::expm1(-s_hat * std::log1p(1.0 / static_cast<double>(x)));
    }
    return 1.0 - std::exp(s_hat * std::log(static_cast<double>(x)));
}

double ksd_kernel(Count x, Count y, Count support_max, double s_hat, double bandwidth) {
    const Count rx = x > 1 ? x - 1 : support_max;
    const Count ry = y > 1 ? y - 1 : support_max;
    const double sx = ksd_score(x, support_max, s_hat);
    const double sy = ksd_score(y, support_max, s_hat);
    const double kxy = gaussian(x, y, bandwidth);
    const double kx_ry = gaussian(x, ry, bandwidth);
    const double krx_y = gaussian(rx, y, bandwidth);
    const double krx_ry = gaussian(rx, ry, bandwidth);
    return sx * kxy * sy - sx * (kxy - kx_ry) - (kxy - krx_y) * sy + (kxy - krx_y - kx_ry + krx_ry);
}

double ksd_yang(const Tally& tally, double s_hat, double bandwidth) {
    require_shape(s_hat);
    if (tally.n < 2) {
        throw DomainError("ksd_yang: the U-statistic needs n >= 2");
    }
    if (!(bandwidth > 0.0)) {
        throw DomainError("ksd_yang: bandwidth must be positive");
    }
    const Count K = tally.max();
    CompensatedSum sum;
    for (std::size_t a = 0; a < tally.distinct(); ++a) {
        const double ca = static_cast<double>(tally.counts[a]);
        // ordered pairs of distinct indices sharing the value: c(c−1)
        sum += ca * (ca - 1.0) * ksd_kernel(tally.values[a], tally.values[a], K, s_hat, bandwidth);
        for (std::size_t b = a + 1; b < tally.distinct(); ++b) {
            const double cb = static_cast<double>(tally.counts[b]);
            sum += 2.0 * ca * cb * ksd_kernel(tally.values[a], tally.values[b], K, s_hat, bandwidth);
        }
    }
    const double n = static_cast<double>(tally.n);
    return sum.value() / (n * (n - 1.0));
}

double ksd_yang(const Sample& sample, double s_hat, double bandwidth) {
    return ksd_yang(Tally::of(sample), s_hat, bandwidth);
}

double empirical_mellin(const Tally& tally, double t) {
    double sum = 0.0;
    for (std::size_t a = 0; a < tally.distinct(); ++a) {
        sum += static_cast<double>(tally.counts[a]) * std::exp(-t * std::log(static_cast<double>(tally.values[a])));
    }
    return sum / static_cast<double>(tally.n);
}

double meintanis(const Tally& tally, double s_hat, double beta, const MellinQuadrature& quad) {
    require_shape(s_hat);
    if (!(beta > 0.0)) {
        throw DomainError("meintanis: beta must be positive");
    }
    if (quad.nodes < 2) {
        throw DomainError("meintanis: need at least two quadrature nodes");
    }
    const double zeta_s = zeta(s_hat);
    auto bracket = [&](double t) {
        const double d = zeta_s * empirical_mellin(tally, t) - zeta(s_hat + t);
        return d * d;
    };
    auto laguerre = [&](int nodes) {
        const QuadratureRule& rule = laguerre_rule(nodes);
        return rule.apply([&](double u) { return bracket(u / beta); }) / beta;
    };
    const double coarse = laguerre(quad.nodes);
    const double fine = laguerre(2 * quad.nodes);
    const double n = static_cast<double>(tally.n);
    if (std::abs(fine - coarse) <= quad.doubling_tol * std::max(1.0, std::abs(fine))) {
        return n * fine;
    }
    const AdaptiveResult adaptive = integrate_half_line(
        [&](double t) { return bracket(t) * std::exp(-beta * t); }, 0.0, quad.adaptive_rel_tol);
    if (!adaptive.converged) {
        throw ConvergenceError("meintanis: adaptive quadrature missed its tolerance");
    }
    return n * adaptive.value;
}

double meintanis(const Sample& sample, double s_hat, double beta, const MellinQuadrature& quad) {
    return meintanis(Tally::of(sample), s_hat, beta, quad);
}

double characterization_mean(const Tally& tally, double s_hat, Count k) {
    double sum = 0.0;
    for (std::size_t a = 0; a < tally.distinct(); ++a) {
        const Count v = tally.values[a];
        if (v >= k) {
            sum += static_cast<double>(tally.counts[a]) * -std::expm1(-s_hat * std::log1p(1.0 / static_cast<double>(v)));
        }
    }
    return sum / static_cast<double>(tally.n);
}

double ben_statistic(const Tally& tally, double s_hat) {
    if (!(s_hat > 0.0)) {
        throw DomainError("ben_statistic: s_hat must be positive");
    }
    const std::size_t d = tally.distinct();
    const double n = static_cast<double>(tally.n);
    // suffix[a] = e_n(k) for k in (values[a−1], values[a]]
    std::vector<double> suffix(d + 1, 0.0);
    for (std::size_t a = d; a-- > 0;) {
        const double w = -std::expm1(-s_hat * std::log1p(1.0 / static_cast<double>(tally.values[a])));
        suffix[a] = suffix[a + 1] + static_cast<double>(tally.counts[a]) * w / n;
    }
    CompensatedSum sum;
    Count previous = 0;
    for (std::size_t a = 0; a < d; ++a) {
        const double e = suffix[a];
        const double gap = static_cast<double>(tally.values[a] - previous - 1);
        const double at_atom = e - static_cast<double>(tally.counts[a]) / n;
        sum += gap * e * e + at_atom * at_atom;
        previous = tally.values[a];
    }
    return sum.value();
}

double ben_statistic(const Sample& sample, double s_hat) { return ben_statistic(Tally::of(sample), s_hat); }

} // namespace zgof
