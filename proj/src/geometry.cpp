#include "gptmap/geometry.hpp"

#include "gptmap/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gptmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidShape, msg); }

double parse_number(std::string_view token, const std::string& context) {
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        invalid("cannot parse number '" + std::string(token) + "' in " + context);
    return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& context, char sep = ',') {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(parse_number(text.substr(start, pos - start), context));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

int as_int(double v, const std::string& context) {
    if (v != std::round(v)) invalid(context + " must be an integer");
    return static_cast<int>(v);
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) invalid(std::string(what) + " must be positive");
}

CurveComponent disk_component(const DiskShape& d) {
    return CurveComponent([d](double t) {
        const Complex e = std::polar(1.0, t);
        return CurveSample{d.center + d.radius * e, Complex(0, d.radius) * e, -d.radius * e};
    });
}

CurveComponent ellipse_component(const EllipseShape& s) {
    return CurveComponent([s](double t) {
        const double c = std::cos(t), sn = std::sin(t);
        return CurveSample{{s.a * c, s.b * sn}, {-s.a * sn, s.b * c}, {-s.a * c, -s.b * sn}};
    });
}

CurveComponent star_component(const StarShape& s) {
    return CurveComponent([s](double t) {
        const double p = s.p;
        const double r = s.r0 + s.eps * std::cos(p * t);
        const double dr = -s.eps * p * std::sin(p * t);
        const double ddr = -s.eps * p * p * std::cos(p * t);
        const Complex e = std::polar(1.0, t);
        const Complex i(0, 1);
        return CurveSample{r * e, (dr + i * r) * e, (ddr + 2.0 * i * dr - r) * e};
    });
}

CurveComponent kite_component(const KiteShape& s) {
    return CurveComponent([s](double t) {
        const double c = std::cos(t), sn = std::sin(t);
        const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
        return CurveSample{{c + s.a2 * c2 + s.a1, s.b * sn},
                           {-sn - 2 * s.a2 * s2, s.b * c},
                           {-c - 4 * s.a2 * c2, -s.b * sn}};
    });
}

CurveComponent perturbed_ellipse_component(const PerturbedEllipseShape& s) {
    return CurveComponent([s](double t) {
        double rho = 1.0, drho = 0.0, ddrho = 0.0;
        for (const auto& m : s.modes) {
            const double p = m.p;
            rho += m.amplitude * std::cos(p * t);
            drho -= m.amplitude * p * std::sin(p * t);
            ddrho -= m.amplitude * p * p * std::cos(p * t);
        }
        const double c = std::cos(t), sn = std::sin(t);
        const Complex e{s.a * c, s.b * sn};
        const Complex de{-s.a * sn, s.b * c};
        const Complex dde{-s.a * c, -s.b * sn};
        return CurveSample{rho * e, drho * e + rho * de, ddrho * e + 2.0 * drho * de + rho * dde};
    });
}

struct ComponentBuilder {
    std::vector<CurveComponent> operator()(const DiskShape& d) const {
        require_positive(d.radius, "disk radius");
        return {disk_component(d)};
    }
    std::vector<CurveComponent> operator()(const EllipseShape& e) const {
        require_positive(e.a, "ellipse semi-axis a");
        require_positive(e.b, "ellipse semi-axis b");
        return {ellipse_component(e)};
    }
    std::vector<CurveComponent> operator()(const StarShape& s) const {
        require_positive(s.r0, "star radius r0");
        if (s.p < 1) invalid("star mode p must be >= 1");
        if (std::abs(s.eps) >= s.r0) invalid("star with |eps| >= r0 is self-intersecting");
        return {star_component(s)};
    }
    std::vector<CurveComponent> operator()(const KiteShape& k) const {
        require_positive(k.b, "kite height b");
        return {kite_component(k)};
    }
    std::vector<CurveComponent> operator()(const PerturbedEllipseShape& s) const {
        require_positive(s.a, "ellipse semi-axis a");
        require_positive(s.b, "ellipse semi-axis b");
        double total = 0.0;
        for (const auto& m : s.modes) {
            if (m.p < 1) invalid("perturbation mode must be >= 1");
            total += std::abs(m.amplitude);
        }
        if (total >= 1.0) invalid("radial perturbation amplitudes must sum below 1");
        return {perturbed_ellipse_component(s)};
    }
    std::vector<CurveComponent> operator()(const DiskUnionShape& u) const {
        if (u.disks.empty()) invalid("disk union needs at least one disk");
        std::vector<CurveComponent> out;
        for (std::size_t i = 0; i < u.disks.size(); ++i) {
            require_positive(u.disks[i].radius, "disk radius");
            for (std::size_t j = 0; j < i; ++j) {
                const double gap = std::abs(u.disks[i].center - u.disks[j].center) -
                                   u.disks[i].radius - u.disks[j].radius;
                if (!(gap > 0.0)) invalid("disks in a union must be pairwise disjoint");
            }
            out.push_back(disk_component(u.disks[i]));
        }
        return out;
    }
};

struct Formatter {
    std::string operator()(const DiskShape& d) const {
        std::string s = "disk:" + fmt_num(d.radius);
        if (d.center != Complex{}) s += "," + fmt_num(d.center.real()) + "," + fmt_num(d.center.imag());
        return s;
    }
    std::string operator()(const EllipseShape& e) const {
        return "ellipse:" + fmt_num(e.a) + "," + fmt_num(e.b);
    }
    std::string operator()(const StarShape& s) const {
        return "star:" + fmt_num(s.r0) + "," + fmt_num(s.eps) + "," + std::to_string(s.p);
    }
    std::string operator()(const KiteShape& k) const {
        return "kite:" + fmt_num(k.a1) + "," + fmt_num(k.a2) + "," + fmt_num(k.b);
    }
    std::string operator()(const PerturbedEllipseShape& s) const {
        std::string out = "perturbed-ellipse:" + fmt_num(s.a) + "," + fmt_num(s.b);
        for (const auto& m : s.modes) out += "," + fmt_num(m.amplitude) + "," + std::to_string(m.p);
        return out;
    }
    std::string operator()(const DiskUnionShape& u) const {
        std::string out = "disks:";
        for (std::size_t i = 0; i < u.disks.size(); ++i) {
            if (i) out += "/";
            out += fmt_num(u.disks[i].radius) + "," + fmt_num(u.disks[i].center.real()) + "," +
                   fmt_num(u.disks[i].center.imag());
        }
        return out;
    }
};

ShapeKind parse_kind(const std::string& name, std::string_view args) {
    const std::string ctx = "shape '" + name + "'";
    if (name == "disk") {
        auto v = parse_list(args, ctx);
        if (v.size() != 1 && v.size() != 3) invalid("disk expects R or R,cx,cy");
        DiskShape d{v[0], {}};
        if (v.size() == 3) d.center = {v[1], v[2]};
        return d;
    }
    if (name == "ellipse") {
        auto v = parse_list(args, ctx);
        if (v.size() != 2) invalid("ellipse expects a,b");
        return EllipseShape{v[0], v[1]};
    }
    if (name == "star") {
        auto v = parse_list(args, ctx);
        if (v.size() != 3) invalid("star expects r0,eps,p");
        return StarShape{v[0], v[1], as_int(v[2], "star mode p")};
    }
    if (name == "kite") {
        auto v = parse_list(args, ctx);
        if (v.empty()) return KiteShape{};
        if (v.size() != 3) invalid("kite expects a1,a2,b");
        return KiteShape{v[0], v[1], v[2]};
    }
    if (name == "perturbed-ellipse") {
        auto v = parse_list(args, ctx);
        if (v.size() < 2 || v.size() % 2 != 0) invalid("perturbed-ellipse expects a,b[,amplitude,p]...");
        PerturbedEllipseShape s{v[0], v[1], {}};
        for (std::size_t i = 2; i < v.size(); i += 2)
            s.modes.push_back({v[i], as_int(v[i + 1], "perturbation mode")});
        return s;
    }
    if (name == "union-disks") {
        auto v = parse_list(args, ctx);
        if (v.size() != 1 && v.size() != 2) invalid("union-disks expects d[,R]");
        const double r = v.size() == 2 ? v[1] : 1.0;
        return DiskUnionShape{{DiskShape{r, {-v[0], 0.0}}, DiskShape{r, {v[0], 0.0}}}};
    }
    if (name == "disks") {
        DiskUnionShape u;
        std::size_t start = 0;
        while (start <= args.size()) {
            auto pos = args.find('/', start);
            auto v = parse_list(args.substr(start, pos - start), ctx);
            if (v.size() != 3) invalid("disks expects R,x,y/R,x,y/...");
            u.disks.push_back({v[0], {v[1], v[2]}});
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        return u;
    }
    invalid("unknown shape '" + name + "'");
}

} // namespace

CurveComponent CurveComponent::transformed(double scale, double angle, Complex offset) const {
    const Complex factor = scale * std::polar(1.0, angle);
    return CurveComponent([inner = eval_, factor, offset](double t) {
        const CurveSample s = inner(t);
        return CurveSample{offset + factor * s.position, factor * s.d1, factor * s.d2};
    });
}

ShapeSpec parse_shape(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find('@', start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    const std::string& head = parts.front();
    const auto colon = head.find(':');
    const std::string name = head.substr(0, colon);
    const std::string args = colon == std::string::npos ? std::string() : head.substr(colon + 1);

    ShapeSpec spec{parse_kind(name, args)};
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) invalid("modifier '" + parts[i] + "' needs key=value");
        const std::string key = parts[i].substr(0, eq);
        const std::string_view value = std::string_view(parts[i]).substr(eq + 1);
        if (key == "rotate") {
            spec.rotation = parse_number(value, "rotate") * kDeg;
        } else if (key == "scale") {
            spec.scale = parse_number(value, "scale");
        } else if (key == "shift") {
            auto v = parse_list(value, "shift");
            if (v.size() != 2) invalid("shift expects x,y");
            spec.offset = {v[0], v[1]};
        } else {
            invalid("unknown modifier '" + key + "'");
        }
    }
    return spec;
}

std::string to_string(const ShapeSpec& spec) {
    std::string out = std::visit(Formatter{}, spec.kind);
    if (spec.rotation != 0.0) out += "@rotate=" + fmt_num(spec.rotation / kDeg);
    if (spec.offset != Complex{})
        out += "@shift=" + fmt_num(spec.offset.real()) + "," + fmt_num(spec.offset.imag());
    if (spec.scale != 1.0) out += "@scale=" + fmt_num(spec.scale);
    return out;
}

BoundaryCurve make_shape(const ShapeSpec& spec) {
    require_positive(spec.scale, "scale");
    if (!std::isfinite(spec.rotation) || !std::isfinite(spec.offset.real()) || !std::isfinite(spec.offset.imag()))
        invalid("placement must be finite");
    BoundaryCurve curve;
    curve.label = to_string(spec);
    const bool identity = spec.scale == 1.0 && spec.rotation == 0.0 && spec.offset == Complex{};
    for (auto& c : std::visit(ComponentBuilder{}, spec.kind))
        curve.components.push_back(identity ? std::move(c) : c.transformed(spec.scale, spec.rotation, spec.offset));
    return curve;
}

SampledBoundary sample(const BoundaryCurve& curve, int nodes_per_component) {
    if (nodes_per_component < 16 || nodes_per_component % 2 != 0)
        throw Error(ErrorCode::InvalidResolution,
                    "node count must be even and >= 16, got " + std::to_string(nodes_per_component));
    if (curve.components.empty()) throw Error(ErrorCode::InvalidShape, "curve has no components");

    SampledBoundary sb;
    sb.nodes_per_component = nodes_per_component;
    sb.components = static_cast<int>(curve.components.size());
    sb.label = curve.label;
    const std::size_t total = curve.components.size() * nodes_per_component;
    sb.nodes.reserve(total);
    const double h = 2.0 * kPi / nodes_per_component;

    for (std::size_t c = 0; c < curve.components.size(); ++c) {
        for (int j = 0; j < nodes_per_component; ++j) {
            const double t = h * j;
            const CurveSample s = curve.components[c](t);
            const double speed = std::abs(s.d1);
            if (!(speed > 0.0))
                throw Error(ErrorCode::InvalidShape, "degenerate parametrization (zero speed) at t=" + fmt_num(t));
            const Complex tangent = s.d1 / speed;
            sb.nodes.push_back(s.position);
            sb.tangents.push_back(s.d1);
            sb.normals.push_back(Complex(0, -1) * tangent);
            sb.curvature.push_back(std::imag(std::conj(s.d1) * s.d2) / (speed * speed * speed));
            sb.speed.push_back(speed);
            sb.weights.push_back(h * speed);
            sb.parameter.push_back(t);
            sb.component_of.push_back(static_cast<int>(c));
        }
    }
    if (sb.components > 1 && !(sb.min_component_separation() > 0.0))
        throw Error(ErrorCode::InvalidShape, "boundary components intersect at sample resolution");
    return sb;
}

std::vector<Complex> trace(const BoundaryCurve& curve, int samples_per_component) {
    std::vector<Complex> out;
    out.reserve(curve.components.size() * samples_per_component);
    for (const auto& c : curve.components)
        for (int j = 0; j < samples_per_component; ++j)
            out.push_back(c(2.0 * kPi * j / samples_per_component).position);
    return out;
}

double SampledBoundary::perimeter() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double SampledBoundary::perimeter(int component) const {
    double s = 0.0;
    for (auto i = component_begin(component); i < component_end(component); ++i) s += weights[i];
    return s;
}

double SampledBoundary::enclosed_area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < size(); ++i) a += weights[i] * std::real(nodes[i] * std::conj(normals[i]));
    return 0.5 * a;
}

Complex SampledBoundary::centroid() const {
    // x-moment = (1/2) \oint x^2 nu_x, y-moment = (1/2) \oint y^2 nu_y
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double x = nodes[i].real(), y = nodes[i].imag();
        mx += 0.5 * weights[i] * x * x * normals[i].real();
        my += 0.5 * weights[i] * y * y * normals[i].imag();
    }
    const double area = enclosed_area();
    return {mx / area, my / area};
}

double SampledBoundary::max_radius() const {
    double r = 0.0;
    for (const auto& z : nodes) r = std::max(r, std::abs(z));
    return r;
}

double SampledBoundary::min_component_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (component_of[i] != component_of[j]) best = std::min(best, std::abs(nodes[i] - nodes[j]));
    return best;
}

} // namespace gptmap
