#include "zgof/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Eigenvalues>

#include "zgof/errors.hpp"
#include "zgof/special.hpp"

namespace zgof {
namespace {

QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Golub-Welsch: tridiagonal eigen-solve failed");
    }
    QuadratureRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

// Kronrod 15-point nodes/weights and the embedded Gauss 7-point weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod_sum = fc * kWgk[7];
    double gauss_sum = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod_sum += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss_sum += kWg[j / 2] * (f1 + f2);
        }
    }
    const double value = kronrod_sum * half;
    return {a, b, value, std::abs((kronrod_sum - gauss_sum) * half)};
}

} // namespace

QuadratureRule gauss_jacobi_unit(int n, double beta) {
    if (n < 1) {
        throw DomainError("gauss_jacobi_unit: need at least one node");
    }
    if (!(beta >= 0.0)) {
        throw DomainError("gauss_jacobi_unit: beta must be nonnegative");
    }
    // Jacobi P^{(beta, 0)} on [-1, 1] (weight (1-x)^beta), mapped by t = (1 + x) / 2.
    const double a = beta;
    const double b = 0.0;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        diag[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        const double num = 4.0 * k * (k + a) * (k + b) * (k + a + b);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        off[k - 1] = std::sqrt(num / den);
    }
    QuadratureRule rule = golub_welsch(diag, off, 1.0);
    rule.nodes = (rule.nodes.array() + 1.0) * 0.5;
    rule.weights /= (beta + 1.0);  // total mass ∫_0^1 (1-t)^beta dt
    return rule;
}

QuadratureRule gauss_laguerre(int n) {
    if (n < 1) {
        throw DomainError("gauss_laguerre: need at least one node");
    }
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        diag[k] = 2.0 * k + 1.0;
    }
    for (int k = 1; k < n; ++k) {
        off[k - 1] = k;
    }
    return golub_welsch(diag, off, 1.0);
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals) {
    std::priority_queue<Segment> heap;
    Segment first = kronrod(f, a, b);
    double value = first.value;
    double error = first.error;
    heap.push(first);
    int intervals = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && intervals < max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = kronrod(f, worst.a, mid);
        const Segment right = kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // re-sum to shed the drift from incremental updates
    double total = 0.0, total_error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_error += heap.top().error;
        heap.pop();
    }
    return {total, total_error, intervals, total_error <= std::max(abs_tol, rel_tol * std::abs(total))};
}

AdaptiveResult integrate_half_line(const std::function<double(double)>& f, double abs_tol, double rel_tol,
                                   int max_intervals) {
    auto mapped = [&f](double x) {
        if (x >= 1.0) {
            return 0.0;
        }
        const double one_minus = 1.0 - x;
        return f(x / one_minus) / (one_minus * one_minus);
    };
    return integrate_adaptive(mapped, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

} // namespace zgof
