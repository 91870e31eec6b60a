#include "zgof/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "zgof/errors.hpp"
#include "zgof/estimation.hpp"
#include "zgof/quadrature.hpp"
#include "zgof/rng.hpp"

namespace zgof {
namespace {

constexpr std::int64_t kMaxTerms = 100'000'000;

// (k/(k−1))^s − 1 for k >= 2
double ratio_excess(double s, std::int64_t k) {
    return std::expm1(s * std::log1p(1.0 / static_cast<double>(k - 1)));
}

double a_series(double s0, double zeta_s0, double t, double tol) {
    if (!(t > 0.0 && t < 1.0)) {
        return 0.0;
    }
    // k = j + 1: t^j (k/(k−1))^s0 k^{-s0} log(k/(k−1)) = t^j j^{-s0} log1p(1/j)
    double sum = 0.0;
    double power = 1.0;
    const double scale = (1.0 - t) / zeta_s0;
    for (std::int64_t j = 1; j < kMaxTerms; ++j) {
        power *= t;
        const double jd = static_cast<double>(j);
        sum += power * std::exp(-s0 * std::log(jd)) * std::log1p(1.0 / jd);
        // Σ_{i>j} t^i i^{-s0-1} <= t^{j+1} j^{-s0} / s0
        const double tail = scale * power * t * std::exp(-s0 * std::log(jd)) / s0;
        if (tail < tol) {
            return scale * sum;
        }
    }
    throw ConvergenceError("a_function: series did not converge");
}

} // namespace

double a_function(double s0, double t, double tol) {
    if (!(s0 > 1.0)) {
        throw DomainError("a_function: s0 must exceed 1");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("a_function: t must lie in [0, 1]");
    }
    return a_series(s0, zeta(s0), t, tol);
}

CovarianceKernel::CovarianceKernel(double s0, WeightBeta beta, double tol)
    : s0_(s0), beta_(beta), tol_(tol) {
    if (!(s0 > 1.0)) {
        throw DomainError("CovarianceKernel: s0 must exceed 1, got " + std::to_string(s0));
    }
    if (!(tol > 0.0)) {
        throw DomainError("CovarianceKernel: tolerance must be positive");
    }
    zeta_ = zeta(s0);
    fisher_ = fisher_information(s0);
}

double CovarianceKernel::operator()(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw DomainError("CovarianceKernel: arguments must lie in [0, 1]");
    }
    if (u <= 0.0 || u >= 1.0 || v <= 0.0 || v >= 1.0) {
        return 0.0;
    }
    const double uv = u * v;
    const double bu = 1.0 - u;
    const double bv = 1.0 - v;
    double series = uv;  // the atom k = 1
    double power = 1.0;
    const double tail_scale = bu * bv / zeta_;
    std::int64_t k = 2;
    for (; k < kMaxTerms; ++k) {
        power *= uv;
        const double d = ratio_excess(s0_, k);
        const double kd = static_cast<double>(k);
        series += std::exp(-s0_ * std::log(kd)) * power * (d + bu) * (d + bv);
        const double tail = tail_scale * (d + bu) * (d + bv) * power *
                            std::min(std::exp((1.0 - s0_) * std::log(kd)) / (s0_ - 1.0),
                                     std::exp(-s0_ * std::log(kd)) / (1.0 - uv));
        if (tail < tol_) {
            break;
        }
    }
    if (k == kMaxTerms) {
        throw ConvergenceError("CovarianceKernel: series did not converge");
    }
    const double au = a_series(s0_, zeta_, u, tol_);
    const double av = a_series(s0_, zeta_, v, tol_);
    return tail_scale * series - au * av / fisher_;
}

Eigen::MatrixXd CovarianceKernel::matrix(const Eigen::VectorXd& nodes) const {
    const Eigen::Index q = nodes.size();
    Eigen::VectorXd inner(q);
    Eigen::VectorXd outer(q);
    Eigen::VectorXd power = Eigen::VectorXd::Ones(q);
    Eigen::VectorXd a(q);
    for (Eigen::Index i = 0; i < q; ++i) {
        const double t = nodes[i];
        if (!(t >= 0.0 && t <= 1.0)) {
            throw DomainError("CovarianceKernel: nodes must lie in [0, 1]");
        }
        outer[i] = (t > 0.0 && t < 1.0) ? 1.0 - t : 0.0;
        a[i] = a_series(s0_, zeta_, t, tol_);
        inner[i] = t;  // h(1, t) / (−(1 − t))
    }
    Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(q, q);
    moment.selfadjointView<Eigen::Lower>().rankUpdate(inner);

    const double top = outer.size() ? nodes.cwiseMin(1.0).maxCoeff() : 0.0;
    std::int64_t k = 2;
    for (; k < kMaxTerms; ++k) {
        const double kd = static_cast<double>(k);
        const double d = ratio_excess(s0_, k);
        const double weight = std::exp(-s0_ * std::log(kd));
        power.array() *= nodes.array();
        inner = power.array() * (d + outer.array());
        moment.selfadjointView<Eigen::Lower>().rankUpdate(inner, weight);
        if ((k & 15) == 0) {
            double worst = 0.0;
            for (Eigen::Index i = 0; i < q; ++i) {
                worst = std::max(worst, outer[i] * (d + outer[i]) * power[i]);
            }
            const double mass = top < 1.0 ? std::min(std::exp((1.0 - s0_) * std::log(kd)) / (s0_ - 1.0),
                                                     weight / (1.0 - top * top))
                                           : std::exp((1.0 - s0_) * std::log(kd)) / (s0_ - 1.0);
            if (worst * worst * mass / zeta_ < tol_) {
                break;
            }
        }
    }
    if (k == kMaxTerms) {
        throw ConvergenceError("CovarianceKernel: series did not converge");
    }
    Eigen::MatrixXd full = moment.selfadjointView<Eigen::Lower>();
    full = outer.asDiagonal() * full * outer.asDiagonal() / zeta_;
    full.noalias() -= a * a.transpose() / fisher_;
    return full;
}

Eigen::MatrixXd jacobi_basis_matrix(int dim, WeightBeta beta, const Eigen::VectorXd& nodes) {
    if (dim < 1) {
        throw DomainError("jacobi_basis: dimension must be at least 1");
    }
    const double al = beta.value();
    const Eigen::Index q = nodes.size();
    Eigen::MatrixXd phi(q, dim);
    for (Eigen::Index i = 0; i < q; ++i) {
        const double x = 2.0 * nodes[i] - 1.0;
        double prev = 1.0;
        double cur = (al + 1.0) + (al + 2.0) * (x - 1.0) / 2.0;
        phi(i, 0) = 1.0;
        if (dim > 1) {
            phi(i, 1) = cur;
        }
        for (int n = 2; n < dim; ++n) {
            const double c = 2.0 * n + al;
            const double next = ((c - 1.0) * (c * (c - 2.0) * x + al * al) * cur -
                                 2.0 * (n + al - 1.0) * (n - 1.0) * c * prev) /
                                (2.0 * n * (n + al) * (c - 2.0));
            prev = cur;
            cur = next;
            phi(i, n) = cur;
        }
    }
    for (int n = 0; n < dim; ++n) {
        phi.col(n) *= std::sqrt(2.0 * n + al + 1.0);
    }
    return phi;
}

double jacobi_basis(int index, WeightBeta beta, double t) {
    if (index < 0) {
        throw DomainError("jacobi_basis: index must be nonnegative");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("jacobi_basis: t must lie in [0, 1]");
    }
    Eigen::VectorXd node(1);
    node[0] = t;
    return jacobi_basis_matrix(index + 1, beta, node)(0, index);
}

double kernel_trace(const CovarianceKernel& kernel, int order) {
    const QuadratureRule rule = gauss_jacobi_unit(order, kernel.beta().value());
    return rule.apply([&](double t) { return kernel(t, t); });
}

EigenResult rayleigh_ritz(const CovarianceKernel& kernel, int dim, int quad_order) {
    if (dim < 1) {
        throw DomainError("rayleigh_ritz: dim must be at least 1");
    }
    if (quad_order == 0) {
        quad_order = std::max(2 * dim, 64);
    }
    if (quad_order < 2 * dim) {
        throw DomainError("rayleigh_ritz: quad_order must be at least 2 * dim");
    }
    const QuadratureRule rule = gauss_jacobi_unit(quad_order, kernel.beta().value());
    const Eigen::MatrixXd c = kernel.matrix(rule.nodes);
    const Eigen::MatrixXd wphi = rule.weights.asDiagonal() * jacobi_basis_matrix(dim, kernel.beta(), rule.nodes);
    Eigen::MatrixXd a = wphi.transpose() * c * wphi;

    const double asymmetry = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-8) {
        throw NumericError("rayleigh_ritz: Galerkin matrix asymmetric by " + std::to_string(asymmetry));
    }
    a = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("rayleigh_ritz: eigen-solve failed");
    }

    EigenResult out;
    out.dim = dim;
    out.quad_order = quad_order;
    out.s0 = kernel.s0();
    out.beta = kernel.beta().value();
    const Eigen::VectorXd& ev = solver.eigenvalues();
    double total = 0.0;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
        if (ev[i] < 0.0) {
            out.clip_mass += -ev[i];
            out.eigenvalues.push_back(0.0);
        } else {
            out.eigenvalues.push_back(ev[i]);
            total += ev[i];
        }
    }
    out.trace_reference = kernel_trace(kernel, std::max(400, 2 * quad_order));
    out.trace_residual = std::abs(total - out.trace_reference);
    return out;
}

double limit_quantile(const std::vector<double>& eigenvalues, double level, std::size_t draws, std::uint64_t seed) {
    if (!(level > 0.0 && level < 1.0) || draws == 0) {
        throw DomainError("limit_quantile: need level in (0, 1) and draws > 0");
    }
    RngStream rng(seed, 0);
    std::normal_distribution<double> normal;
    std::vector<double> values(draws);
    for (auto& value : values) {
        double sum = 0.0;
        for (double lambda : eigenvalues) {
            const double z = normal(rng);
            sum += lambda * z * z;
        }
        value = sum;
    }
    const auto index = static_cast<std::size_t>(std::ceil(level * static_cast<double>(draws))) - 1;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(index), values.end());
    return values[index];
}

} // namespace zgof
