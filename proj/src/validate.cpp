#include "gptmap/validate.hpp"

#include "gptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gptmap {

namespace {

constexpr double kNegligibleRatio = 1e-8;

double directed(const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, std::norm(p - q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double point_segment_sq(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? std::real((p - a) * std::conj(ab)) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::norm(p - (a + t * ab));
}

double directed_polyline(const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    const std::size_t n = to.size();
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) best = std::min(best, point_segment_sq(p, to[j], to[(j + 1) % n]));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

} // namespace

IdentitySides consistency_identity(const GammaTable& gamma) {
    if (gamma.order < 3) throw Error(ErrorCode::InvalidArgument, "consistency identity needs GPT order >= 3");
    const Complex g11 = gamma.g2(1, 1);
    if (g11 == Complex{}) throw Error(ErrorCode::DegenerateDomain, "gamma2_11 vanishes");
    const Complex g21 = gamma.g2(2, 1);
    return {gamma.g2(3, 1), gamma.g1(1, 1) * g11 + g21 * g21 / g11};
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "Hausdorff distance of an empty set");
    return std::max(directed(a, b), directed(b, a));
}

double polyline_hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "Hausdorff distance of an empty set");
    return std::max(directed_polyline(a, b), directed_polyline(b, a));
}

double diameter(const std::vector<Complex>& points) {
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, std::norm(points[i] - points[j]));
    return std::sqrt(d);
}

ShapeDescriptors shape_descriptors(const ConformalCoefficients& coeffs) {
    if (!(coeffs.c > 0.0)) throw Error(ErrorCode::Normalization, "leading coefficient must be positive");
    ShapeDescriptors d;
    for (int j = 1; j <= coeffs.N; ++j) {
        const Complex r = coeffs.mu_at(j) / coeffs.c;
        d.ratios.push_back(r);
        d.moduli.push_back(std::abs(r));
        if (d.reference_index == 0 && std::abs(r) > kNegligibleRatio) d.reference_index = j;
    }
    const int ref = d.reference_index;
    for (int j = 1; j <= coeffs.N; ++j) {
        const Complex r = d.ratios[static_cast<std::size_t>(j - 1)];
        if (ref == 0 || std::abs(r) <= kNegligibleRatio) {
            d.relative_phases.push_back(0.0);
            continue;
        }
        const Complex rr = d.ratios[static_cast<std::size_t>(ref - 1)];
        // Under rotation mu_j picks up exp(i (j+1) theta); this combination cancels it.
        const double phase = (ref + 1) * std::arg(r) - (j + 1) * std::arg(rr);
        d.relative_phases.push_back(std::remainder(phase, 2.0 * std::acos(-1.0)));
    }
    return d;
}

} // namespace gptmap
