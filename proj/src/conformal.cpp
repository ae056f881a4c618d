#include "gptmap/conformal.hpp"

#include "gptmap/error.hpp"

#include <cmath>
#include <numbers>

namespace gptmap {

namespace {

constexpr double kPhaseTolerance = 1e-8;

Complex column_sum(const std::vector<LaurentSeries>& powers, int l, const Eigen::MatrixXcd& g) {
    Complex s{};
    for (int m = 1; m <= l && m <= static_cast<int>(powers.size()); ++m) s += g(m - 1, 0) * powers[m - 1][-l];
    return s;
}

} // namespace

Complex ConformalCoefficients::mu_at(int l) const {
    if (l == -1) return c;
    if (l < -1 || l > N) throw Error(ErrorCode::InvalidArgument, "mu index out of range");
    return mu[static_cast<std::size_t>(l)];
}

LaurentSeries map_series(double c, const std::vector<Complex>& mu) {
    std::vector<Complex> coeffs{c};
    coeffs.insert(coeffs.end(), mu.begin(), mu.end());
    return LaurentSeries::from_coefficients(1, coeffs, static_cast<int>(mu.size()) - 1);
}

ReciprocalPowers reciprocal_powers(double c, const std::vector<Complex>& mu, int order) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::Normalization, "leading coefficient c must be > 0");
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "reciprocal order must be >= 1");
    const auto needed = static_cast<std::size_t>(std::max(0, order - 1));
    if (mu.size() < needed)
        throw Error(ErrorCode::InvalidArgument,
                    "B_" + std::to_string(order) + " needs mu_0..mu_" + std::to_string(order - 2));
    const std::vector<Complex> used(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(needed));
    const LaurentSeries inverse = series_reciprocal(map_series(c, used), order);

    ReciprocalPowers out;
    for (int k = 1; k <= order; ++k) out.B.push_back(inverse[-k]);
    out.inverse_powers.push_back(inverse);
    for (int m = 2; m <= order; ++m) out.inverse_powers.push_back(series_multiply(out.inverse_powers.back(), inverse));
    return out;
}

ConformalCoefficients recover_coefficients(const GammaTable& gamma, int N) {
    if (gamma.components != 1)
        throw Error(ErrorCode::UnsupportedGeometry,
                    "conformal recovery requires a simply connected (single-component) domain");
    return formal_coefficients(gamma, N);
}

ConformalCoefficients formal_coefficients(const GammaTable& gamma, int N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
    if (gamma.order < std::max(N, 2))
        throw Error(ErrorCode::InvalidArgument,
                    "truncation " + std::to_string(N) + " needs GPT order >= " + std::to_string(std::max(N, 2)));

    const Complex g11 = gamma.g2(1, 1);
    if (!(g11.real() < 0.0) || std::abs(g11.imag()) > kPhaseTolerance * std::abs(g11))
        throw Error(ErrorCode::NotSimplyConnected,
                    "gamma2_11 must be real and negative (got " + std::to_string(g11.real()) + " + " +
                        std::to_string(g11.imag()) + "i)");

    ConformalCoefficients out;
    out.N = N;
    out.shape = gamma.shape;
    out.nodes_per_component = gamma.nodes_per_component;
    out.c = std::sqrt(-g11.real());
    out.mu.push_back(-gamma.g2(2, 1) / (out.c * out.c));

    for (int l = 1; l <= N; ++l) {
        // B_k for k <= l only involves mu_0..mu_{l-2}, all known here.
        const ReciprocalPowers rp = reciprocal_powers(out.c, out.mu, l);
        out.mu.push_back(column_sum(rp.inverse_powers, l, gamma.gamma1));
    }
    out.B = reciprocal_powers(out.c, out.mu, N + 1).B;

    // Cross-check the first two steps against their closed forms.
    const Complex mu1 = gamma.g1(1, 1) * out.B[0];
    if (std::abs(mu1 - out.mu[1]) > 1e-12 * (1.0 + std::abs(mu1)))
        throw Error(ErrorCode::NumericalFailure, "mu_1 recursion disagrees with gamma1_11 B_1");
    if (N >= 2 && gamma.order >= 2) {
        const Complex mu2 = gamma.g1(2, 1) * out.B[0] * out.B[0] + gamma.g1(1, 1) * out.B[1];
        if (std::abs(mu2 - out.mu[2]) > 1e-12 * (1.0 + std::abs(mu2)))
            throw Error(ErrorCode::NumericalFailure, "mu_2 recursion disagrees with its closed form");
    }
    return out;
}

std::vector<Complex> evaluate_map(const ConformalCoefficients& coeffs, const std::vector<Complex>& zeta,
                                  int truncation) {
    const int n = truncation < 0 ? coeffs.N : truncation;
    if (n > coeffs.N) throw Error(ErrorCode::InvalidArgument, "truncation exceeds the recovered order");
    std::vector<Complex> out;
    out.reserve(zeta.size());
    for (const auto& z : zeta) {
        if (std::abs(z) < 1.0 - 1e-12) throw Error(ErrorCode::Domain, "map is defined for |zeta| >= 1 only");
        const Complex inv = 1.0 / z;
        Complex s = coeffs.mu[static_cast<std::size_t>(n)];
        for (int l = n - 1; l >= 0; --l) s = coeffs.mu[static_cast<std::size_t>(l)] + s * inv;
        out.push_back(coeffs.c * z + s);
    }
    return out;
}

std::vector<Complex> map_image(const ConformalCoefficients& coeffs, int truncation, int samples) {
    std::vector<Complex> zeta;
    zeta.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) zeta.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / samples));
    return evaluate_map(coeffs, zeta, truncation);
}

std::vector<double> vanishing_residuals(const ConformalCoefficients& coeffs, const GammaTable& gamma, int lmax) {
    if (lmax < 2) return {};
    if (gamma.order < lmax) throw Error(ErrorCode::InvalidArgument, "residual level exceeds GPT order");
    if (coeffs.N < lmax - 2) throw Error(ErrorCode::InvalidArgument, "residual level exceeds map truncation + 2");
    const ReciprocalPowers rp = reciprocal_powers(coeffs.c, coeffs.mu, lmax);
    std::vector<double> out;
    for (int l = 2; l <= lmax; ++l) out.push_back(std::abs(column_sum(rp.inverse_powers, l, gamma.gamma2)));
    return out;
}

double reciprocal_residual(const ConformalCoefficients& coeffs) {
    const LaurentSeries phi = map_series(coeffs.c, coeffs.mu);
    const LaurentSeries inv = LaurentSeries::from_coefficients(-1, coeffs.B, static_cast<int>(coeffs.B.size()));
    const LaurentSeries prod = series_multiply(phi, inv);
    double worst = 0.0;
    for (int e = 0; e >= -prod.order(); --e) worst = std::max(worst, std::abs(prod[e] - (e == 0 ? 1.0 : 0.0)));
    return worst;
}

} // namespace gptmap
