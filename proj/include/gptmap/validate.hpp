#pragma once

#include "gptmap/conformal.hpp"
#include "gptmap/gpt.hpp"
#include "gptmap/report.hpp"

#include <vector>

namespace gptmap {

struct IdentitySides {
    Complex lhs;  // gamma2_31
    Complex rhs;  // gamma1_11 gamma2_11 + gamma2_21^2 / gamma2_11
};

/// The third-order relation among gamma entries that holds for simply
/// connected domains only.
IdentitySides consistency_identity(const GammaTable& gamma);

/// Symmetric point-set Hausdorff distance.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Hausdorff distance between two closed polylines (points against segments),
/// insensitive to how either curve is sampled.
double polyline_hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Largest pairwise distance of a point set.
double diameter(const std::vector<Complex>& points);

struct ShapeDescriptors {
    std::vector<Complex> ratios;          // mu_j / mu_{-1}, j = 1..N
    std::vector<double> moduli;           // |mu_j / mu_{-1}|
    /// arg(mu_j^{r+1} conj(mu_r)^{j+1}) against the first non-negligible
    /// mu_r; unchanged by rotations. Zero where undefined.
    std::vector<double> relative_phases;
    int reference_index = 0;              // r, or 0 if every ratio is negligible
};

ShapeDescriptors shape_descriptors(const ConformalCoefficients& coeffs);

} // namespace gptmap
