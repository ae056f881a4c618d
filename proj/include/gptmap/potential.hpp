#pragma once

#include "gptmap/geometry.hpp"

#include <Eigen/Dense>

#include <memory>

namespace gptmap {

/// Nystrom matrix of the Neumann-Poincare operator K*, acting on nodal
/// density values (quadrature weights folded into the columns).
struct NpMatrix {
    Eigen::MatrixXd entries;
    std::shared_ptr<const SampledBoundary> boundary;
};

/// Nystrom matrix of the logarithmic single-layer potential on a single
/// closed curve. The weighted form diag(w) * entries is exactly symmetric.
struct SingleLayerMatrix {
    Eigen::MatrixXd entries;
    std::shared_ptr<const SampledBoundary> boundary;
};

NpMatrix assemble_np(const SampledBoundary& sb);

/// Uses the periodic log-split rule: ln|x(t)-x(s)| = ln|2 sin((t-s)/2)| + smooth,
/// with trapezoidal-log weights for the first part.
SingleLayerMatrix assemble_single_layer(const SampledBoundary& sb);

/// Weights as an Eigen vector.
Eigen::VectorXd weight_vector(const SampledBoundary& sb);

/// (1/2pi) sum_j ln|x - y_j| phi_j w_j for points off the boundary.
Eigen::VectorXd single_layer_off_boundary(const SampledBoundary& sb, const Eigen::VectorXd& density,
                                          const std::vector<Complex>& points);

/// Factorization of (lambda I - K*) deflated onto weighted-mean-zero
/// densities. Built once per (boundary, lambda); solve() is const and may be
/// called concurrently.
class DensitySolver {
public:
    DensitySolver(const NpMatrix& np, double lambda);

    double lambda() const { return lambda_; }
    const SampledBoundary& boundary() const { return *boundary_; }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    /// Column-wise solve for several right-hand sides.
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

private:
    void check_rhs(const Eigen::MatrixXd& rhs) const;

    double lambda_;
    std::shared_ptr<const SampledBoundary> boundary_;
    Eigen::VectorXd weights_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

Eigen::VectorXd solve_density(const NpMatrix& np, double lambda, const Eigen::VectorXd& rhs);

/// |sum_i w_i f_i| relative to sum_i w_i |f_i| (0 for f == 0).
double relative_weighted_mean(const Eigen::VectorXd& w, const Eigen::VectorXd& f);

} // namespace gptmap
