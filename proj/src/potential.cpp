#include "gptmap/potential.hpp"

#include "gptmap/error.hpp"

#include <cmath>
#include <numbers>

namespace gptmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMeanTolerance = 1e-10;

// Trapezoidal-log weights R_k for \int_0^{2pi} ln(4 sin^2((t-s)/2)) f(s) ds
// with 2n equispaced nodes, indexed by k = (i - j) mod 2n.
Eigen::VectorXd log_weights(int nodes) {
    const int n = nodes / 2;
    Eigen::VectorXd r(nodes);
    for (int k = 0; k < nodes; ++k) {
        const double d = 2.0 * kPi * k / nodes;
        double s = 0.0;
        for (int m = 1; m < n; ++m) s += std::cos(m * d) / m;
        r[k] = -2.0 * kPi / n * s - kPi / (static_cast<double>(n) * n) * std::cos(n * d);
    }
    return r;
}

} // namespace

Eigen::VectorXd weight_vector(const SampledBoundary& sb) {
    return Eigen::Map<const Eigen::VectorXd>(sb.weights.data(), static_cast<Eigen::Index>(sb.weights.size()));
}

double relative_weighted_mean(const Eigen::VectorXd& w, const Eigen::VectorXd& f) {
    const double scale = w.dot(f.cwiseAbs());
    if (scale == 0.0) return 0.0;
    return std::abs(w.dot(f)) / scale;
}

NpMatrix assemble_np(const SampledBoundary& sb) {
    const auto n = static_cast<Eigen::Index>(sb.size());
    NpMatrix np;
    np.boundary = std::make_shared<const SampledBoundary>(sb);
    np.entries.resize(n, n);
    const double scale = 1.0 / (2.0 * kPi);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex x = sb.nodes[i];
        const Complex nu = sb.normals[i];
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                np.entries(i, i) = sb.curvature[i] / (4.0 * kPi) * sb.weights[i];
                continue;
            }
            const Complex d = x - sb.nodes[j];
            const double r2 = std::norm(d);
            if (!(r2 > 0.0))
                throw Error(ErrorCode::SingularGeometry, "coincident boundary nodes " + std::to_string(i) +
                                                             " and " + std::to_string(j));
            np.entries(i, j) = scale * std::real(d * std::conj(nu)) / r2 * sb.weights[j];
        }
    }
    return np;
}

SingleLayerMatrix assemble_single_layer(const SampledBoundary& sb) {
    if (sb.components != 1)
        throw Error(ErrorCode::UnsupportedGeometry, "single-layer assembly supports one closed curve only");
    const int m = sb.nodes_per_component;
    const Eigen::VectorXd r = log_weights(m);
    const double h = 2.0 * kPi / m;

    SingleLayerMatrix sl;
    sl.boundary = std::make_shared<const SampledBoundary>(sb);
    sl.entries.resize(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double smooth;
            if (i == j) {
                smooth = std::log(sb.speed[i]);
            } else {
                const double half = 0.5 * (sb.parameter[i] - sb.parameter[j]);
                smooth = std::log(std::abs(sb.nodes[i] - sb.nodes[j]) / std::abs(2.0 * std::sin(half)));
            }
            const int k = ((i - j) % m + m) % m;
            sl.entries(i, j) = (0.5 * r[k] + h * smooth) * sb.speed[j] / (2.0 * kPi);
        }
    }
    return sl;
}

Eigen::VectorXd single_layer_off_boundary(const SampledBoundary& sb, const Eigen::VectorXd& density,
                                          const std::vector<Complex>& points) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
    for (std::size_t p = 0; p < points.size(); ++p) {
        double s = 0.0;
        for (std::size_t j = 0; j < sb.size(); ++j)
            s += std::log(std::abs(points[p] - sb.nodes[j])) * density[static_cast<Eigen::Index>(j)] * sb.weights[j];
        out[static_cast<Eigen::Index>(p)] = s / (2.0 * kPi);
    }
    return out;
}

DensitySolver::DensitySolver(const NpMatrix& np, double lambda)
    : lambda_(lambda), boundary_(np.boundary), weights_(weight_vector(*np.boundary)) {
    if (!(std::abs(lambda) >= 0.5) || !std::isfinite(lambda))
        throw Error(ErrorCode::InvalidArgument, "density solve needs |lambda| >= 1/2");
    const auto n = np.entries.rows();
    // Rank-one deflation: A = lambda I - K* + sigma 1 w^T / |dOmega|. For any
    // phi, w^T A phi = (lambda - 1/2 + sigma) w^T phi, so mean-zero data forces
    // a mean-zero solution as long as lambda - 1/2 + sigma != 0.
    const double sigma = lambda > 0.0 ? 1.0 : -1.0;
    Eigen::MatrixXd a = -np.entries;
    a.diagonal().array() += lambda;
    a += (sigma / weights_.sum()) * Eigen::VectorXd::Ones(n) * weights_.transpose();
    lu_.compute(a);
    const double det_scale = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(det_scale > 1e-13 * lu_.matrixLU().diagonal().cwiseAbs().maxCoeff()))
        throw Error(ErrorCode::NumericalFailure, "deflated density operator is singular");
}

void DensitySolver::check_rhs(const Eigen::MatrixXd& rhs) const {
    if (rhs.rows() != weights_.size())
        throw Error(ErrorCode::InvalidArgument, "rhs length does not match node count");
    for (Eigen::Index c = 0; c < rhs.cols(); ++c)
        if (relative_weighted_mean(weights_, rhs.col(c)) > kMeanTolerance)
            throw Error(ErrorCode::InvalidRhs, "right-hand side has non-negligible weighted mean");
}

Eigen::VectorXd DensitySolver::solve(const Eigen::VectorXd& rhs) const {
    check_rhs(rhs);
    Eigen::VectorXd phi = lu_.solve(rhs);
    if (!phi.allFinite()) throw Error(ErrorCode::NumericalFailure, "density solve produced non-finite values");
    return phi;
}

Eigen::MatrixXd DensitySolver::solve(const Eigen::MatrixXd& rhs) const {
    check_rhs(rhs);
    Eigen::MatrixXd phi = lu_.solve(rhs);
    if (!phi.allFinite()) throw Error(ErrorCode::NumericalFailure, "density solve produced non-finite values");
    return phi;
}

Eigen::VectorXd solve_density(const NpMatrix& np, double lambda, const Eigen::VectorXd& rhs) {
    return DensitySolver(np, lambda).solve(rhs);
}

} // namespace gptmap
