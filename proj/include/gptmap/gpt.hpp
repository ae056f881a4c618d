#pragma once

#include "gptmap/geometry.hpp"
#include "gptmap/potential.hpp"
#include "gptmap/report.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gptmap {

enum class Harmonic { Cos, Sin };

/// r^n cos(n theta) or r^n sin(n theta), evaluated as Re / Im of z^n.
double harmonic_poly(int n, Harmonic kind, Complex z);

/// nu . grad P_n at every node of sb; zero vector for n == 0.
Eigen::VectorXd harmonic_normal_derivative(int n, Harmonic kind, const SampledBoundary& sb);

/// lambda = (k + 1) / (2 (k - 1)); -1/2 for an insulating inclusion (k = 0).
double lambda_from_conductivity(double k);

/// Contracted GPTs. Index (m, n) and first superscript go with the harmonic
/// P_m tested against; the second superscript goes with the source P_n:
///   cs(m-1, n-1) = \int P_m^c (lambda I - K*)^{-1}[nu . grad P_n^s].
/// With this placement the far-field expansion reads
///   (u - h) ~ -sum_m cos(m th)/(2 pi m r^m) sum_n (cc_mn a_n^c + cs_mn a_n^s) - ...
struct GptTable {
    int order = 0;
    double k = 0.0;
    double lambda = -0.5;
    Eigen::MatrixXd cc, cs, sc, ss;

    std::string shape;
    int nodes_per_component = 0;
    int components = 1;

    /// Entry by 1-based indices.
    double at(Harmonic test, Harmonic source, int m, int n) const;
};

/// Complex tensors gamma^1, gamma^2 (0-based storage: gamma1(m-1, n-1)).
struct GammaTable {
    int order = 0;
    Eigen::MatrixXcd gamma1, gamma2;

    double k = 0.0;
    std::string shape;
    int nodes_per_component = 0;
    int components = 1;

    Complex g1(int m, int n) const { return gamma1(m - 1, n - 1); }
    Complex g2(int m, int n) const { return gamma2(m - 1, n - 1); }
};

constexpr int kMaxGptOrder = 24;

GptTable compute_gpt(const SampledBoundary& sb, double k, int order);
/// Same, reusing an assembled NP matrix.
GptTable compute_gpt(const NpMatrix& np, double k, int order);

GammaTable gamma_tables(const GptTable& gpt);

/// Largest block-symmetry defect, each entry normalized by
/// sqrt(d_m d_n), d_m = max(|cc_mm|, |ss_mm|).
double block_symmetry_error(const GptTable& gpt);

/// h = a0 + sum_n r^n (ac_n cos n th + as_n sin n th), n = 1..degree.
struct HarmonicSource {
    double a0 = 0.0;
    std::vector<double> ac;  // ac[n-1]
    std::vector<double> as;  // as[n-1]

    int degree() const { return static_cast<int>(std::max(ac.size(), as.size())); }
    double cos_coeff(int n) const { return n <= static_cast<int>(ac.size()) ? ac[n - 1] : 0.0; }
    double sin_coeff(int n) const { return n <= static_cast<int>(as.size()) ? as[n - 1] : 0.0; }
    /// alpha_n = a_n^c - i a_n^s
    Complex alpha(int n) const { return {cos_coeff(n), -sin_coeff(n)}; }
    double operator()(Complex z) const;
};

struct ExteriorField {
    std::vector<Complex> beta;     // beta[m-1], m = 1..multipole order
    std::vector<double> multipole; // h - Re sum beta_m / z^m
    std::vector<double> direct;    // h + S[phi] evaluated by quadrature
};

/// Perturbed exterior potential for source h. Evaluation points must satisfy
/// |x| >= 1.5 max|y| over boundary nodes.
ExteriorField exterior_field(const SampledBoundary& sb, double k, const HarmonicSource& source,
                             const std::vector<Complex>& points, int multipole_order = 8);

/// beta_m = sum_n gamma1_mn alpha_n + gamma2_mn conj(alpha_n), m = 1..gamma.order.
std::vector<Complex> multipole_coefficients(const GammaTable& gamma, const HarmonicSource& source);

/// Checks M(s Omega) = s^{m+n} M(Omega) entrywise. Mismatches are reported,
/// never thrown.
Check gpt_scaling_check(const GptTable& unit, const GptTable& scaled, double s, double tolerance = 1e-6);

} // namespace gptmap
