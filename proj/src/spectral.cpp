#include "gptmap/spectral.hpp"

#include "gptmap/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gptmap {

namespace {

constexpr double kConstantModeGap = 1e-6;
constexpr double kTieTolerance = 1e-10;
constexpr double kClusterTolerance = 1e-9;

// Orthonormal basis of {phi : w^T phi = 0} from a Householder reflector
// mapping w/|w| to e_0; its last M-1 columns span the complement.
Eigen::MatrixXd mean_zero_basis(const Eigen::VectorXd& w) {
    const auto n = w.size();
    Eigen::VectorXd v = w.normalized();
    v[0] -= 1.0;
    const double norm = v.norm();
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    if (norm > 0.0) {
        v /= norm;
        h.noalias() -= 2.0 * v * v.transpose();
    }
    return h.rightCols(n - 1);
}

// Coefficients <f, phi_j>_H for every retained mode.
Eigen::VectorXd mode_coefficients(const SpectralData& spec, const SingleLayerMatrix& sl, const Eigen::VectorXd& f) {
    const Eigen::VectorXd wf = weight_vector(*sl.boundary).cwiseProduct(f);
    const Eigen::VectorXd dual = -(sl.entries.transpose() * wf);
    return spec.eigenvectors.transpose() * dual;
}

} // namespace

double energy_inner(const SingleLayerMatrix& sl, const Eigen::VectorXd& phi, const Eigen::VectorXd& psi) {
    const Eigen::VectorXd w = weight_vector(*sl.boundary);
    return -phi.cwiseProduct(w).dot(sl.entries * psi);
}

Eigen::MatrixXd energy_gram(const SpectralData& spec, const SingleLayerMatrix& sl) {
    const Eigen::VectorXd w = weight_vector(*sl.boundary);
    const Eigen::MatrixXd s_phi = sl.entries * spec.eigenvectors;
    return -(w.asDiagonal() * spec.eigenvectors).transpose() * s_phi;
}

SpectralData np_eigendecomposition(const NpMatrix& np, const SingleLayerMatrix& sl, int modes) {
    const SampledBoundary& sb = *np.boundary;
    if (sb.components != 1)
        throw Error(ErrorCode::UnsupportedGeometry, "NP eigendecomposition supports one closed curve only");
    if (sl.entries.rows() != np.entries.rows())
        throw Error(ErrorCode::InvalidArgument, "single-layer and NP matrices have different sizes");
    const auto m = np.entries.rows();
    if (modes < 0 || modes > m / 4)
        throw Error(ErrorCode::InvalidArgument, "mode count must be in [0, M/4]");

    const Eigen::VectorXd w = weight_vector(sb);
    const Eigen::MatrixXd q = mean_zero_basis(w);

    Eigen::MatrixXd metric = -(w.asDiagonal() * sl.entries);
    metric = 0.5 * (metric + metric.transpose()).eval();
    const Eigen::MatrixXd metric_r = q.transpose() * metric * q;

    // P K* Q with P = I - 1 w^T / |dOmega| keeps images mean-zero.
    Eigen::MatrixXd kq = np.entries * q;
    const Eigen::RowVectorXd mean_row = (w.transpose() * kq) / w.sum();
    kq.rowwise() -= mean_row;
    const Eigen::MatrixXd k_r = q.transpose() * kq;

    Eigen::MatrixXd a = metric_r * k_r;
    a = 0.5 * (a + a.transpose()).eval();

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, metric_r,
                                                                     Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NumericalFailure,
                    "energy metric is not positive definite on mean-zero densities (under-resolved single layer)");

    // Eigenvalues come back ascending. Group numerically equal ones: inside a
    // degenerate cluster the basis is arbitrary, so re-diagonalize the
    // weighted L2 Gram there and put the smoothest (smallest L2 norm) first.
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    const Eigen::MatrixXd l2_r = q.transpose() * w.asDiagonal() * q;

    struct Cluster {
        double value;
        std::vector<double> values;
        Eigen::MatrixXd basis;
    };
    std::vector<Cluster> clusters;
    for (Eigen::Index j = 0; j < values.size();) {
        if (!(std::abs(values[j]) < 0.5 - kConstantModeGap)) {
            ++j;
            continue;
        }
        Eigen::Index e = j + 1;
        while (e < values.size() && values[e] - values[e - 1] < kClusterTolerance &&
               std::abs(values[e]) < 0.5 - kConstantModeGap)
            ++e;
        const Eigen::MatrixXd block = vectors.middleCols(j, e - j);
        Cluster c;
        c.value = values.segment(j, e - j).mean();
        if (e - j == 1) {
            c.basis = block;
            c.values.push_back(values[j]);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> l2(block.transpose() * l2_r * block);
            c.basis = block * l2.eigenvectors();
            const Eigen::MatrixXd rq = c.basis.transpose() * a * c.basis;
            for (Eigen::Index i = 0; i < rq.rows(); ++i) c.values.push_back(rq(i, i));
        }
        clusters.push_back(std::move(c));
        j = e;
    }
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const Cluster& x, const Cluster& y) { return std::abs(x.value) > std::abs(y.value); });
    // +lambda ahead of -lambda when the two moduli agree to kTieTolerance.
    for (std::size_t i = 1; i < clusters.size(); ++i) {
        auto& a = clusters[i - 1];
        auto& b = clusters[i];
        if (a.value < 0 && b.value > 0 && std::abs(std::abs(a.value) - std::abs(b.value)) < kTieTolerance) {
            std::swap(a, b);
            ++i;
        }
    }

    SpectralData out;
    out.boundary = np.boundary;
    std::vector<Eigen::VectorXd> kept;
    for (const auto& c : clusters) {
        for (std::size_t i = 0; i < c.values.size() && out.eigenvalues.size() < static_cast<std::size_t>(modes); ++i) {
            out.eigenvalues.push_back(c.values[i]);
            kept.push_back(q * c.basis.col(static_cast<Eigen::Index>(i)));
        }
    }
    out.eigenvectors.resize(m, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) out.eigenvectors.col(static_cast<Eigen::Index>(j)) = kept[j];
    return out;
}

double gpt_spectral(const SpectralData& spec, const SingleLayerMatrix& sl, double lambda, Harmonic test, int m,
                    Harmonic source, int n) {
    if (!(std::abs(lambda) >= 0.5)) throw Error(ErrorCode::InvalidArgument, "spectral GPT needs |lambda| >= 1/2");
    if (spec.count() == 0) return 0.0;
    const SampledBoundary& sb = *sl.boundary;
    const Eigen::VectorXd a = mode_coefficients(spec, sl, harmonic_normal_derivative(n, source, sb));
    const Eigen::VectorXd b = mode_coefficients(spec, sl, harmonic_normal_derivative(m, test, sb));
    double sum = 0.0;
    for (int j = 0; j < spec.count(); ++j) {
        const double lj = spec.eigenvalues[static_cast<std::size_t>(j)];
        if (std::abs(lambda - lj) < 1e-12) throw Error(ErrorCode::Resonance, "lambda coincides with an NP eigenvalue");
        sum += (a[j] * b[j]) / ((lambda - lj) * (lj - 0.5));
    }
    return -sum;
}

GptTable spectral_gpt_table(const SpectralData& spec, const SingleLayerMatrix& sl, double k, int order) {
    const SampledBoundary& sb = *sl.boundary;
    GptTable t;
    t.order = order;
    t.k = k;
    t.lambda = lambda_from_conductivity(k);
    t.shape = sb.label;
    t.nodes_per_component = sb.nodes_per_component;
    t.components = sb.components;
    for (auto* block : {&t.cc, &t.cs, &t.sc, &t.ss}) block->setZero(order, order);
    if (spec.count() == 0) return t;

    std::vector<Eigen::VectorXd> cos_coef, sin_coef;
    for (int n = 1; n <= order; ++n) {
        cos_coef.push_back(mode_coefficients(spec, sl, harmonic_normal_derivative(n, Harmonic::Cos, sb)));
        sin_coef.push_back(mode_coefficients(spec, sl, harmonic_normal_derivative(n, Harmonic::Sin, sb)));
    }
    Eigen::VectorXd denom(spec.count());
    for (int j = 0; j < spec.count(); ++j) {
        const double lj = spec.eigenvalues[static_cast<std::size_t>(j)];
        if (std::abs(t.lambda - lj) < 1e-12) throw Error(ErrorCode::Resonance, "lambda coincides with an NP eigenvalue");
        denom[j] = (t.lambda - lj) * (lj - 0.5);
    }
    auto entry = [&](const Eigen::VectorXd& b, const Eigen::VectorXd& a) {
        double sum = 0.0;
        for (int j = 0; j < spec.count(); ++j) sum += (a[j] * b[j]) / denom[j];
        return -sum;
    };
    for (int m = 0; m < order; ++m) {
        for (int n = 0; n < order; ++n) {
            t.cc(m, n) = entry(cos_coef[m], cos_coef[n]);
            t.cs(m, n) = entry(cos_coef[m], sin_coef[n]);
            t.sc(m, n) = entry(sin_coef[m], cos_coef[n]);
            t.ss(m, n) = entry(sin_coef[m], sin_coef[n]);
        }
    }
    return t;
}

double spectral_tail(const SpectralData& spec, const SingleLayerMatrix& sl, const Eigen::VectorXd& f) {
    const double total = energy_inner(sl, f, f);
    if (total <= 0.0) return 0.0;
    const Eigen::VectorXd a = mode_coefficients(spec, sl, f);
    return std::max(0.0, 1.0 - a.squaredNorm() / total);
}

} // namespace gptmap
