#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace gptmap {

using Complex = std::complex<double>;

/// Position and first two parameter derivatives of a curve at one t.
struct CurveSample {
    Complex position;
    Complex d1;
    Complex d2;
};

/// A smooth closed curve t in [0, 2pi) -> plane, counterclockwise.
class CurveComponent {
public:
    using Evaluator = std::function<CurveSample(double)>;

    explicit CurveComponent(Evaluator eval) : eval_(std::move(eval)) {}

    CurveSample operator()(double t) const { return eval_(t); }

    /// z -> offset + scale * exp(i angle) * z
    CurveComponent transformed(double scale, double angle, Complex offset) const;

private:
    Evaluator eval_;
};

struct BoundaryCurve {
    std::vector<CurveComponent> components;
    std::string label;

    std::size_t component_count() const { return components.size(); }
};

// Shape descriptors. Angles are in radians.

struct DiskShape {
    double radius = 1.0;
    Complex center{};
};

struct EllipseShape {
    double a = 2.0;
    double b = 1.0;
};

/// r(theta) = r0 + eps * cos(p theta)
struct StarShape {
    double r0 = 2.0;
    double eps = 0.4;
    int p = 3;
};

/// (cos t + a2 cos 2t + a1, b sin t)
struct KiteShape {
    double a1 = -0.65;
    double a2 = 0.65;
    double b = 1.5;
};

struct FourierMode {
    double amplitude = 0.0;
    int p = 1;
};

/// Ellipse point (a cos t, b sin t) scaled radially by 1 + sum amplitude cos(p t).
struct PerturbedEllipseShape {
    double a = 2.0;
    double b = 1.0;
    std::vector<FourierMode> modes;
};

struct DiskUnionShape {
    std::vector<DiskShape> disks;
};

using ShapeKind = std::variant<DiskShape, EllipseShape, StarShape, KiteShape,
                               PerturbedEllipseShape, DiskUnionShape>;

/// A base shape plus a similarity placement applied in the order
/// scale, rotate, translate.
struct ShapeSpec {
    ShapeKind kind;
    double scale = 1.0;
    double rotation = 0.0;
    Complex offset{};
};

/// Parses descriptors of the form
///   name[:p1,p2,...][@rotate=deg][@shift=x,y][@scale=s]
/// with names disk, ellipse, star, kite, perturbed-ellipse, union-disks, disks.
ShapeSpec parse_shape(const std::string& text);

/// Canonical text form, parseable by parse_shape.
std::string to_string(const ShapeSpec& spec);

BoundaryCurve make_shape(const ShapeSpec& spec);

/// Quadrature-ready discretization: uniform parameter grid per component,
/// trapezoidal weights scaled by speed.
struct SampledBoundary {
    std::vector<Complex> nodes;
    std::vector<Complex> normals;
    std::vector<Complex> tangents;   // d/dt of the parametrization
    std::vector<double> curvature;
    std::vector<double> speed;
    std::vector<double> weights;
    std::vector<double> parameter;
    std::vector<int> component_of;
    int nodes_per_component = 0;
    int components = 0;
    std::string label;

    std::size_t size() const { return nodes.size(); }
    std::size_t component_begin(int c) const { return static_cast<std::size_t>(c) * nodes_per_component; }
    std::size_t component_end(int c) const { return component_begin(c + 1); }

    double perimeter() const;
    double perimeter(int component) const;
    /// Signed area enclosed by all components (divergence rule on nodes/weights).
    double enclosed_area() const;
    Complex centroid() const;
    /// Largest |node| measured from the origin.
    double max_radius() const;
    /// Smallest distance between nodes of different components; +inf for one component.
    double min_component_separation() const;
};

SampledBoundary sample(const BoundaryCurve& curve, int nodes_per_component);

/// Dense sampling of the exact curve at n uniform parameters per component
/// (positions only), for plotting and distance metrics.
std::vector<Complex> trace(const BoundaryCurve& curve, int samples_per_component);

} // namespace gptmap
