#include "gptmap/gpt.hpp"

#include "gptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gptmap {

namespace {

constexpr double kPi = std::numbers::pi;

Complex int_power(Complex z, int n) {
    Complex result(1.0, 0.0);
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

void check_conductivity(double k) {
    if (!std::isfinite(k) || k < 0.0 || k == 1.0)
        throw Error(ErrorCode::InvalidArgument, "conductivity must be finite, >= 0 and != 1");
}

} // namespace

double harmonic_poly(int n, Harmonic kind, Complex z) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "harmonic degree must be >= 0");
    const Complex p = int_power(z, n);
    return kind == Harmonic::Cos ? p.real() : p.imag();
}

Eigen::VectorXd harmonic_normal_derivative(int n, Harmonic kind, const SampledBoundary& sb) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "harmonic degree must be >= 0");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sb.size()));
    if (n == 0) return out;
    // grad Re f = conj(f'), and nu . conj(g) = Re(nu g) for f' = n z^{n-1}.
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const Complex v = sb.normals[i] * (static_cast<double>(n) * int_power(sb.nodes[i], n - 1));
        out[static_cast<Eigen::Index>(i)] = kind == Harmonic::Cos ? v.real() : v.imag();
    }
    return out;
}

double lambda_from_conductivity(double k) {
    check_conductivity(k);
    return (k + 1.0) / (2.0 * (k - 1.0));
}

double GptTable::at(Harmonic test, Harmonic source, int m, int n) const {
    if (m < 1 || n < 1 || m > order || n > order) throw Error(ErrorCode::InvalidArgument, "GPT index out of range");
    const Eigen::MatrixXd& block = test == Harmonic::Cos ? (source == Harmonic::Cos ? cc : cs)
                                                         : (source == Harmonic::Cos ? sc : ss);
    return block(m - 1, n - 1);
}

GptTable compute_gpt(const SampledBoundary& sb, double k, int order) {
    check_conductivity(k);
    if (order < 1 || order > kMaxGptOrder)
        throw Error(ErrorCode::InvalidArgument, "GPT order must be in [1, 24]");
    if (order > sb.nodes_per_component / 8)
        throw Error(ErrorCode::ResolutionInsufficient,
                    "GPT order " + std::to_string(order) + " needs at least " + std::to_string(8 * order) +
                        " nodes per component");
    return compute_gpt(assemble_np(sb), k, order);
}

GptTable compute_gpt(const NpMatrix& np, double k, int order) {
    const SampledBoundary& sb = *np.boundary;
    const double lambda = lambda_from_conductivity(k);
    if (order < 1 || order > kMaxGptOrder)
        throw Error(ErrorCode::InvalidArgument, "GPT order must be in [1, 24]");
    if (order > sb.nodes_per_component / 8)
        throw Error(ErrorCode::ResolutionInsufficient,
                    "GPT order " + std::to_string(order) + " needs at least " + std::to_string(8 * order) +
                        " nodes per component");

    const auto rows = static_cast<Eigen::Index>(sb.size());
    // Columns 2(n-1) and 2(n-1)+1 hold the cos and sin harmonics of degree n.
    Eigen::MatrixXd rhs(rows, 2 * order);
    Eigen::MatrixXd test(rows, 2 * order);
    for (int n = 1; n <= order; ++n) {
        rhs.col(2 * (n - 1)) = harmonic_normal_derivative(n, Harmonic::Cos, sb);
        rhs.col(2 * (n - 1) + 1) = harmonic_normal_derivative(n, Harmonic::Sin, sb);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double w = sb.weights[static_cast<std::size_t>(i)];
            test(i, 2 * (n - 1)) = w * harmonic_poly(n, Harmonic::Cos, sb.nodes[static_cast<std::size_t>(i)]);
            test(i, 2 * (n - 1) + 1) = w * harmonic_poly(n, Harmonic::Sin, sb.nodes[static_cast<std::size_t>(i)]);
        }
    }

    const DensitySolver solver(np, lambda);
    const Eigen::MatrixXd densities = solver.solve(rhs);
    const Eigen::MatrixXd full = test.transpose() * densities;

    GptTable t;
    t.order = order;
    t.k = k;
    t.lambda = lambda;
    t.shape = sb.label;
    t.nodes_per_component = sb.nodes_per_component;
    t.components = sb.components;
    t.cc.resize(order, order);
    t.cs.resize(order, order);
    t.sc.resize(order, order);
    t.ss.resize(order, order);
    for (int m = 0; m < order; ++m) {
        for (int n = 0; n < order; ++n) {
            t.cc(m, n) = full(2 * m, 2 * n);
            t.cs(m, n) = full(2 * m, 2 * n + 1);
            t.sc(m, n) = full(2 * m + 1, 2 * n);
            t.ss(m, n) = full(2 * m + 1, 2 * n + 1);
        }
    }
    return t;
}

GammaTable gamma_tables(const GptTable& gpt) {
    GammaTable g;
    g.order = gpt.order;
    g.k = gpt.k;
    g.shape = gpt.shape;
    g.nodes_per_component = gpt.nodes_per_component;
    g.components = gpt.components;
    g.gamma1.resize(gpt.order, gpt.order);
    g.gamma2.resize(gpt.order, gpt.order);
    const Complex i(0.0, 1.0);
    for (int m = 0; m < gpt.order; ++m) {
        const double pre = 1.0 / (4.0 * kPi * (m + 1));
        for (int n = 0; n < gpt.order; ++n) {
            g.gamma1(m, n) = pre * (gpt.cc(m, n) - gpt.ss(m, n) + i * (gpt.cs(m, n) + gpt.sc(m, n)));
            g.gamma2(m, n) = pre * (gpt.cc(m, n) + gpt.ss(m, n) - i * (gpt.cs(m, n) - gpt.sc(m, n)));
        }
    }
    return g;
}

double block_symmetry_error(const GptTable& gpt) {
    std::vector<double> d(static_cast<std::size_t>(gpt.order));
    for (int m = 0; m < gpt.order; ++m) d[m] = std::max(std::abs(gpt.cc(m, m)), std::abs(gpt.ss(m, m)));
    double worst = 0.0;
    for (int m = 0; m < gpt.order; ++m) {
        for (int n = 0; n < gpt.order; ++n) {
            const double scale = std::sqrt(d[m] * d[n]);
            if (scale == 0.0) continue;
            const double e = std::max({std::abs(gpt.cc(m, n) - gpt.cc(n, m)), std::abs(gpt.ss(m, n) - gpt.ss(n, m)),
                                       std::abs(gpt.cs(m, n) - gpt.sc(n, m))});
            worst = std::max(worst, e / scale);
        }
    }
    return worst;
}

double HarmonicSource::operator()(Complex z) const {
    double v = a0;
    for (int n = 1; n <= degree(); ++n)
        v += cos_coeff(n) * harmonic_poly(n, Harmonic::Cos, z) + sin_coeff(n) * harmonic_poly(n, Harmonic::Sin, z);
    return v;
}

std::vector<Complex> multipole_coefficients(const GammaTable& gamma, const HarmonicSource& source) {
    if (source.degree() > gamma.order)
        throw Error(ErrorCode::InvalidArgument, "source degree exceeds GPT order");
    std::vector<Complex> beta(static_cast<std::size_t>(gamma.order));
    for (int m = 1; m <= gamma.order; ++m) {
        Complex b{};
        for (int n = 1; n <= source.degree(); ++n)
            b += gamma.g1(m, n) * source.alpha(n) + gamma.g2(m, n) * std::conj(source.alpha(n));
        beta[m - 1] = b;
    }
    return beta;
}

ExteriorField exterior_field(const SampledBoundary& sb, double k, const HarmonicSource& source,
                             const std::vector<Complex>& points, int multipole_order) {
    const double limit = 1.5 * sb.max_radius();
    for (const auto& p : points)
        if (!(std::abs(p) >= limit))
            throw Error(ErrorCode::EvaluationRegion, "evaluation point too close to the boundary (|x| < 1.5 max|y|)");

    const NpMatrix np = assemble_np(sb);
    const int order = std::max(multipole_order, source.degree());
    const GammaTable gamma = gamma_tables(compute_gpt(np, k, order));

    ExteriorField f;
    f.beta = multipole_coefficients(gamma, source);
    f.beta.resize(static_cast<std::size_t>(multipole_order));

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sb.size()));
    for (int n = 1; n <= source.degree(); ++n)
        rhs += source.cos_coeff(n) * harmonic_normal_derivative(n, Harmonic::Cos, sb) +
               source.sin_coeff(n) * harmonic_normal_derivative(n, Harmonic::Sin, sb);
    const Eigen::VectorXd phi = DensitySolver(np, lambda_from_conductivity(k)).solve(rhs);
    const Eigen::VectorXd perturbation = single_layer_off_boundary(sb, phi, points);

    for (std::size_t p = 0; p < points.size(); ++p) {
        const double h = source(points[p]);
        Complex series{};
        const Complex inv = 1.0 / points[p];
        Complex pw = inv;
        for (const auto& b : f.beta) {
            series += b * pw;
            pw *= inv;
        }
        f.multipole.push_back(h - series.real());
        f.direct.push_back(h + perturbation[static_cast<Eigen::Index>(p)]);
    }
    return f;
}

Check gpt_scaling_check(const GptTable& unit, const GptTable& scaled, double s, double tolerance) {
    const int order = std::min(unit.order, scaled.order);
    double worst = 0.0;
    for (int m = 1; m <= order; ++m) {
        for (int n = 1; n <= order; ++n) {
            const double f = std::pow(s, m + n);
            const double dm = std::max(std::abs(unit.cc(m - 1, m - 1)), std::abs(unit.ss(m - 1, m - 1)));
            const double dn = std::max(std::abs(unit.cc(n - 1, n - 1)), std::abs(unit.ss(n - 1, n - 1)));
            const double scale = f * std::sqrt(dm * dn);
            if (scale == 0.0) continue;
            for (auto [a, b] : {std::pair{Harmonic::Cos, Harmonic::Cos}, std::pair{Harmonic::Cos, Harmonic::Sin},
                                std::pair{Harmonic::Sin, Harmonic::Cos}, std::pair{Harmonic::Sin, Harmonic::Sin}}) {
                const double e = std::abs(scaled.at(a, b, m, n) - f * unit.at(a, b, m, n)) / scale;
                worst = std::max(worst, e);
            }
        }
    }
    return make_check("gpt_scaling_homogeneity", worst, 0.0, tolerance, Relation::Below, ReferenceSource::Exact, true,
                      "max relative defect of M(s Omega) - s^(m+n) M(Omega)");
}

} // namespace gptmap
