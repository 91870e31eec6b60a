#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "zgof/stein.hpp"

namespace zgof {

/// a(t) = E g(X, t) under Zeta(s0). Zero at t = 0 and t = 1.
double a_function(double s0, double t, double tol = 1e-15);

/// Covariance kernel of the limit process of Z_n under Zeta(s0) with ŝ plugged in.
/// Arguments are named (u, v) to keep them apart from the shape s0.
class CovarianceKernel {
public:
    CovarianceKernel(double s0, WeightBeta beta, double tol = 1e-15);

    double s0() const { return s0_; }
    WeightBeta beta() const { return beta_; }
    double tolerance() const { return tol_; }
    double zeta_s0() const { return zeta_; }
    double fisher() const { return fisher_; }

    double operator()(double u, double v) const;
    /// The same kernel on all node pairs at once.
    Eigen::MatrixXd matrix(const Eigen::VectorXd& nodes) const;

private:
    double s0_;
    WeightBeta beta_;
    double tol_;
    double zeta_;
    double fisher_;
};

/// Orthonormal shifted Jacobi polynomial of degree `index` under (1 − t)^beta on [0, 1].
double jacobi_basis(int index, WeightBeta beta, double t);
/// All degrees 0..dim−1 at each node (rows = nodes).
Eigen::MatrixXd jacobi_basis_matrix(int dim, WeightBeta beta, const Eigen::VectorXd& nodes);

struct EigenResult {
    std::vector<double> eigenvalues;  // descending, >= 0
    int dim = 0;
    int quad_order = 0;
    double s0 = 0.0;
    double beta = 0.0;
    double trace_reference = 0.0;  // ∫ C(t,t) w(t) dt
    double trace_residual = 0.0;   // |Σ λ_j − trace_reference|
    double clip_mass = 0.0;        // |sum of negative eigenvalues set to zero|
};

/// ∫ C(t,t) (1 − t)^beta dt by a high-order Gauss–Jacobi rule.
double kernel_trace(const CovarianceKernel& kernel, int order = 400);

/// Rayleigh–Ritz eigenvalues of the covariance operator on L²((1 − t)^beta).
/// quad_order == 0 picks max(2 dim, 64).
EigenResult rayleigh_ritz(const CovarianceKernel& kernel, int dim, int quad_order = 0);

/// Upper α-quantile of Σ λ_j N_j² from `draws` simulated values.
double limit_quantile(const std::vector<double>& eigenvalues, double level, std::size_t draws,
                      std::uint64_t seed);

} // namespace zgof
