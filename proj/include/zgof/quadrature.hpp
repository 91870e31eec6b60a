#pragma once

#include <functional>

#include <Eigen/Core>

namespace zgof {

/// Nodes and weights of an interpolatory rule: ∫ f(x) w(x) dx ≈ Σ weights[i] f(nodes[i]).
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    template <typename F>
    double apply(F&& f) const {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(nodes[i]);
        }
        return sum;
    }
};

/// Gauss rule on [0, 1] for the weight (1 − t)^beta, beta >= 0 (Golub–Welsch).
QuadratureRule gauss_jacobi_unit(int n, double beta);

/// Gauss rule on [0, ∞) for the weight e^{-x}.
QuadratureRule gauss_laguerre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Adaptive Gauss–Kronrod (7/15) on [a, b] with bisection of the worst interval.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals = 2000);

/// Adaptive Gauss–Kronrod on [0, ∞) through t = x / (1 − x).
AdaptiveResult integrate_half_line(const std::function<double(double)>& f, double abs_tol, double rel_tol,
                                   int max_intervals = 2000);

} // namespace zgof
