#pragma once

#include <array>
#include <cstdint>

namespace zgof {

/// Truncation controls for the zeta series.
///
/// The Euler–Maclaurin remainder is accepted once it is below
/// `abs_tol * max(1, |value|)`; `max_terms` caps the number of directly
/// summed terms before a ConvergenceError is raised.
struct PrecisionPolicy {
    double abs_tol = 1e-12;
    std::int64_t max_terms = 1'000'000;

    void validate() const;
};

/// ζ(s), ζ'(s), ζ''(s) evaluated together.
struct ZetaValues {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Σ_{k>=from} (-log k)^r k^{-s} for r = 0, 1, 2 (a Hurwitz-type tail
/// starting at integer `from`, together with its first two s-derivatives).
ZetaValues zeta_tail(double s, std::uint64_t from, const PrecisionPolicy& policy = {});

/// ζ(s) and its first two derivatives, s > 1.
ZetaValues zeta_all(double s, const PrecisionPolicy& policy = {});

/// Σ_k (-log k)^order k^{-s}; order in {0, 1, 2}, s > 1.
double zeta_derivative(double s, int order, const PrecisionPolicy& policy = {});

inline double zeta(double s, const PrecisionPolicy& policy = {}) { return zeta_derivative(s, 0, policy); }

/// Thread-safe log Γ(x) for x > 0.
double log_gamma(double x);

/// log B(a, b) = log Γ(a) + log Γ(b) − log Γ(a + b), a, b > 0.
double log_beta(double a, double b);

inline constexpr double kPi = 3.14159265358979323846;

} // namespace zgof
