#pragma once

#include "gptmap/gpt.hpp"
#include "gptmap/series.hpp"

#include <vector>

namespace gptmap {

/// Exterior Riemann map Phi(zeta) = c zeta + mu_0 + mu_1/zeta + ... + mu_N/zeta^N
/// together with the expansion 1/Phi = sum_k B_k zeta^{-k}.
struct ConformalCoefficients {
    double c = 1.0;               // mu_{-1} > 0
    std::vector<Complex> mu;      // mu[l] = mu_l, l = 0..N
    std::vector<Complex> B;       // B[k-1] = B_k, k = 1..N+1
    int N = 0;

    std::string shape;
    int nodes_per_component = 0;

    /// mu_l for l >= -1 (mu_{-1} = c).
    Complex mu_at(int l) const;
    Complex B_at(int k) const { return B.at(static_cast<std::size_t>(k - 1)); }
};

struct ReciprocalPowers {
    std::vector<Complex> B;                     // B[k-1], k = 1..order
    std::vector<LaurentSeries> inverse_powers;  // [m-1] = Phi^{-m}, m = 1..order
};

/// Phi as a Laurent series with lead exponent 1, from c and mu_0..mu_{len-1}.
LaurentSeries map_series(double c, const std::vector<Complex>& mu);

/// B_1..B_order and Phi^{-m}, m = 1..order, through zeta^{-order}. Needs
/// mu_0..mu_{order-2}; extra entries are ignored.
ReciprocalPowers reciprocal_powers(double c, const std::vector<Complex>& mu, int order);

/// c = sqrt(-gamma2_11), mu_0 = -gamma2_21 / c^2, then mu_l for l = 1..N as the
/// zeta^{-l} coefficient of sum_m gamma1_m1 Phi^{-m}.
ConformalCoefficients recover_coefficients(const GammaTable& gamma, int N);

/// The same recursion without the single-component requirement. For
/// multiply connected inputs the result is not a Riemann map; it exists so
/// the identities can be evaluated as negative controls.
ConformalCoefficients formal_coefficients(const GammaTable& gamma, int N);

/// Phi_N(zeta) for |zeta| >= 1; truncation defaults to coeffs.N.
std::vector<Complex> evaluate_map(const ConformalCoefficients& coeffs, const std::vector<Complex>& zeta,
                                  int truncation = -1);

/// Phi_N at `samples` equispaced points of the unit circle.
std::vector<Complex> map_image(const ConformalCoefficients& coeffs, int truncation, int samples);

/// |zeta^{-l} coefficient of sum_m gamma2_m1 Phi^{-m}| for l = 2..lmax
/// (entry 0 is l = 2). Zero in the continuum for simply connected domains.
std::vector<double> vanishing_residuals(const ConformalCoefficients& coeffs, const GammaTable& gamma, int lmax);

/// Largest |coefficient| of Phi * (1/Phi) - 1 over exponents 0..-N.
double reciprocal_residual(const ConformalCoefficients& coeffs);

} // namespace gptmap
