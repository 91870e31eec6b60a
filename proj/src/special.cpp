#include "zgof/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <math.h>

#include "zgof/errors.hpp"

namespace zgof {
namespace {

// B_{2j} / (2j)!, j = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

constexpr std::uint64_t kMinEulerMaclaurinStart = 10;

struct TailEstimate {
    ZetaValues sum;
    double last_term = 0.0;
    bool converged = false;
};

// Euler–Maclaurin for Σ_{k>=N} k^{-s}, differentiated term by term in s.
TailEstimate euler_maclaurin_tail(double s, double N, double tol) {
    const double L = std::log(N);
    const double q = 1.0 / (s - 1.0);
    const double A = std::exp((1.0 - s) * L);
    const double B = std::exp(-s * L);

    TailEstimate out;
    out.sum.value = A * q + 0.5 * B;
    out.sum.d1 = A * (-L * q - q * q) - 0.5 * L * B;
    out.sum.d2 = A * (L * L * q + 2.0 * L * q * q + 2.0 * q * q * q) + 0.5 * L * L * B;

    // rising product (s)(s+1)...(s+2j-2) with its first two derivatives
    double p = s, dp = 1.0, ddp = 0.0;
    double power = B / N;  // N^{-s-2j+1}
    const double inv_n2 = 1.0 / (N * N);
    double previous = INFINITY;
    for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
        if (j > 0) {
            for (double shift : {2.0 * j - 1.0, 2.0 * j}) {
                ddp = ddp * (s + shift) + 2.0 * dp;
                dp = dp * (s + shift) + p;
                p *= (s + shift);
            }
            power *= inv_n2;
        }
        const double c = kBernoulliOverFactorial[j] * power;
        const double t0 = c * p;
        const double t1 = c * (dp - p * L);
        const double t2 = c * (ddp - 2.0 * dp * L + p * L * L);
        out.sum.value += t0;
        out.sum.d1 += t1;
        out.sum.d2 += t2;
        const double size = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
        out.last_term = size;
        const double scale = std::max({1.0, std::abs(out.sum.value), std::abs(out.sum.d1), std::abs(out.sum.d2)});
        if (size <= tol * scale) {
            out.converged = true;
            return out;
        }
        if (size > previous) {
            return out;  // asymptotic series started to diverge
        }
        previous = size;
    }
    return out;
}

const std::vector<double>& log_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(4096);
        for (std::size_t k = 1; k < t.size(); ++k) {
            t[k] = std::log(static_cast<double>(k));
        }
        return t;
    }();
    return table;
}

double log_of(std::uint64_t k) {
    const auto& table = log_table();
    return k < table.size() ? table[k] : std::log(static_cast<double>(k));
}

// lnΓ(x) − [(x − ½) ln x − x + ½ ln 2π], valid for x >= 10
double stirling_correction(double x) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (1.0 / 12.0 +
                r2 * (-1.0 / 360.0 +
                      r2 * (1.0 / 1260.0 +
                            r2 * (-1.0 / 1680.0 +
                                  r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

} // namespace

void PrecisionPolicy::validate() const {
    if (!(abs_tol > 0.0)) {
        throw DomainError("PrecisionPolicy: abs_tol must be positive");
    }
    if (max_terms < 100) {
        throw DomainError("PrecisionPolicy: max_terms must be at least 100");
    }
}

ZetaValues zeta_tail(double s, std::uint64_t from, const PrecisionPolicy& policy) {
    if (!(s > 1.0)) {
        throw DomainError("zeta: series diverges for s <= 1 (s = " + std::to_string(s) + ")");
    }
    if (from < 1) {
        throw DomainError("zeta_tail: summation must start at k >= 1");
    }
    policy.validate();

    ZetaValues direct;
    std::uint64_t next = from;
    std::uint64_t start = std::max(from, kMinEulerMaclaurinStart);
    for (;;) {
        for (; next < start; ++next) {
            const double lk = log_of(next);
            const double e = std::exp(-s * lk);
            direct.value += e;
            direct.d1 -= lk * e;
            direct.d2 += lk * lk * e;
        }
        const TailEstimate tail = euler_maclaurin_tail(s, static_cast<double>(start), policy.abs_tol);
        if (tail.converged) {
            return {direct.value + tail.sum.value, direct.d1 + tail.sum.d1, direct.d2 + tail.sum.d2};
        }
        const std::uint64_t grown = start * 4;
        if (static_cast<std::int64_t>(grown - from) > policy.max_terms) {
            throw ConvergenceError("zeta: max_terms reached before the Euler-Maclaurin remainder fell below tolerance");
        }
        start = grown;
    }
}

ZetaValues zeta_all(double s, const PrecisionPolicy& policy) { return zeta_tail(s, 1, policy); }

double zeta_derivative(double s, int order, const PrecisionPolicy& policy) {
    const ZetaValues z = zeta_all(s, policy);
    switch (order) {
    case 0:
        return z.value;
    case 1:
        return z.d1;
    case 2:
        return z.d2;
    default:
        throw DomainError("zeta_derivative: order must be 0, 1 or 2");
    }
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive");
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("log_beta: arguments must be positive");
    }
    if (a < b) {
        std::swap(a, b);
    }
    if (a < 10.0) {
        return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    }
    // lnΓ(a) − lnΓ(a+b) without forming the two large logarithms
    const double diff = -b * std::log(a) - (a + b - 0.5) * std::log1p(b / a) + b + stirling_correction(a) -
                        stirling_correction(a + b);
    return log_gamma(b) + diff;
}

} // namespace zgof
