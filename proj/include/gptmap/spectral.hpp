#pragma once

#include "gptmap/gpt.hpp"
#include "gptmap/potential.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gptmap {

/// Eigenpairs of K* on weighted-mean-zero densities, orthonormal in the
/// energy inner product <phi, psi>_H = -sum_i w_i phi_i (S psi)_i.
struct SpectralData {
    std::vector<double> eigenvalues;  // decreasing |lambda|; +lambda before -lambda on ties
    Eigen::MatrixXd eigenvectors;     // column j = phi_j at the nodes
    std::shared_ptr<const SampledBoundary> boundary;

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

constexpr int kDefaultModeCount = 64;

/// <phi, psi>_H with the assembled single-layer matrix.
double energy_inner(const SingleLayerMatrix& sl, const Eigen::VectorXd& phi, const Eigen::VectorXd& psi);

/// Gram matrix of the retained eigenvectors in the energy inner product.
Eigen::MatrixXd energy_gram(const SpectralData& spec, const SingleLayerMatrix& sl);

/// Generalized symmetric eigenproblem on the mean-zero subspace, metric -W S.
/// Eigenvalues with |lambda| >= 1/2 - 1e-6 are discarded. Requires J <= M/4.
SpectralData np_eigendecomposition(const NpMatrix& np, const SingleLayerMatrix& sl, int modes = kDefaultModeCount);

/// Spectral representation of one GPT entry,
///   -sum_j <f_n, phi_j>_H <f_m, phi_j>_H / ((lambda - lambda_j)(lambda_j - 1/2)),
/// f = nu . grad P. Index placement as in GptTable.
double gpt_spectral(const SpectralData& spec, const SingleLayerMatrix& sl, double lambda, Harmonic test, int m,
                    Harmonic source, int n);

/// All entries up to `order` via the spectral sum.
GptTable spectral_gpt_table(const SpectralData& spec, const SingleLayerMatrix& sl, double k, int order);

/// Fraction of ||f||_H^2 not captured by the retained modes.
double spectral_tail(const SpectralData& spec, const SingleLayerMatrix& sl, const Eigen::VectorXd& f);

} // namespace gptmap
