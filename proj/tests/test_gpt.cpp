#include "gptmap/error.hpp"
#include "gptmap/gpt.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

using namespace gptmap;
using std::numbers::pi;

namespace {

SampledBoundary sampled(const std::string& shape, int m) { return sample(make_shape(parse_shape(shape)), m); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected gptmap::Error");
    return ErrorCode::Io;
}

// Insulated or conducting disk of radius R: the density is rhs / lambda, so
// M_nn = pi n R^{2n} / lambda = 2 pi n R^{2n} (k - 1) / (k + 1).
double disk_diagonal(double r, int n, double k) { return 2 * pi * n * std::pow(r, 2 * n) * (k - 1) / (k + 1); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("harmonic polynomials") {
    const Complex z(0.7, -1.3);
    CHECK(harmonic_poly(1, Harmonic::Cos, z) == doctest::Approx(0.7));
    CHECK(harmonic_poly(1, Harmonic::Sin, z) == doctest::Approx(-1.3));
    CHECK(harmonic_poly(2, Harmonic::Sin, z) == doctest::Approx(2 * 0.7 * -1.3));
    CHECK(harmonic_poly(2, Harmonic::Cos, z) == doctest::Approx(0.49 - 1.69));
    const double r = std::abs(z), th = std::arg(z);
    CHECK(harmonic_poly(7, Harmonic::Cos, z) == doctest::Approx(std::pow(r, 7) * std::cos(7 * th)).epsilon(1e-13));
    CHECK(harmonic_poly(7, Harmonic::Sin, z) == doctest::Approx(std::pow(r, 7) * std::sin(7 * th)).epsilon(1e-13));
}

TEST_CASE("normal derivative of harmonic polynomials on a circle") {
    const double r = 1.7;
    const auto sb = sampled("disk:1.7", 64);
    for (int n : {1, 2, 5}) {
        const Eigen::VectorXd dc = harmonic_normal_derivative(n, Harmonic::Cos, sb);
        const Eigen::VectorXd ds = harmonic_normal_derivative(n, Harmonic::Sin, sb);
        for (int i = 0; i < 64; ++i) {
            const double th = sb.parameter[i];
            CHECK(std::abs(dc[i] - n * std::pow(r, n - 1) * std::cos(n * th)) < 1e-12);
            CHECK(std::abs(ds[i] - n * std::pow(r, n - 1) * std::sin(n * th)) < 1e-12);
        }
    }
    CHECK(harmonic_normal_derivative(0, Harmonic::Cos, sb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normal derivatives of harmonics have zero weighted mean") {
    for (const char* shape : {"ellipse:2,1", "kite", "star:2,0.4,6", "union-disks:2"}) {
        CAPTURE(shape);
        const auto sb = sampled(shape, 256);
        const Eigen::VectorXd w = weight_vector(sb);
        for (int n = 1; n <= 6; ++n)
            for (Harmonic h : {Harmonic::Cos, Harmonic::Sin}) {
                const Eigen::VectorXd f = harmonic_normal_derivative(n, h, sb);
                CHECK(std::abs(w.dot(f)) / w.dot(f.cwiseAbs()) < 1e-10);
            }
    }
}

TEST_CASE("conductivity to lambda") {
    CHECK(lambda_from_conductivity(0.0) == -0.5);
    CHECK(lambda_from_conductivity(3.0) == doctest::Approx(1.0));
    CHECK(code_of([] { lambda_from_conductivity(1.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { lambda_from_conductivity(-2.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("disk GPTs for several radii and conductivities") {
    for (double r : {0.5, 1.0, 2.0})
        for (double k : {0.0, 0.25, 5.0}) {
            CAPTURE(r);
            CAPTURE(k);
            const GptTable g = compute_gpt(sampled("disk:" + std::to_string(r), 256), k, 4);
            for (int m = 1; m <= 4; ++m)
                for (int n = 1; n <= 4; ++n) {
                    const double expect = m == n ? disk_diagonal(r, n, k) : 0.0;
                    const double scale = std::abs(disk_diagonal(r, std::max(m, n), k));
                    CHECK(std::abs(g.at(Harmonic::Cos, Harmonic::Cos, m, n) - expect) < 1e-10 * scale);
                    CHECK(std::abs(g.at(Harmonic::Sin, Harmonic::Sin, m, n) - expect) < 1e-10 * scale);
                    CHECK(std::abs(g.at(Harmonic::Cos, Harmonic::Sin, m, n)) < 1e-10 * scale);
                    CHECK(std::abs(g.at(Harmonic::Sin, Harmonic::Cos, m, n)) < 1e-10 * scale);
                }
        }
}

TEST_CASE("isotropic polarization tensor of the disk") {
    const GptTable g = compute_gpt(sampled("disk:1.5", 128), 3.0, 1);
    CHECK(g.cc(0, 0) == doctest::Approx(2 * pi * 1.5 * 1.5 * (3.0 - 1) / (3.0 + 1)).epsilon(1e-12));
    CHECK(g.lambda == doctest::Approx(1.0));
}

TEST_CASE("block symmetry") {
    for (const char* shape : {"ellipse:2,1@rotate=17", "kite", "star:2,0.4,3", "union-disks:2"}) {
        for (double k : {0.0, 4.0}) {
            CAPTURE(shape);
            const GptTable g = compute_gpt(sampled(shape, 1024), k, 6);
            CHECK(block_symmetry_error(g) < 1e-6);
        }
    }
}

TEST_CASE("insulating diagonal blocks are negative definite") {
    const GptTable g = compute_gpt(sampled("kite", 512), 0.0, 6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cc(0.5 * (g.cc + g.cc.transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(0.5 * (g.ss + g.ss.transpose()));
    CHECK(cc.eigenvalues().maxCoeff() < 0.0);
    CHECK(ss.eigenvalues().maxCoeff() < 0.0);
}

TEST_CASE("gamma tables of the disk") {
    for (double r : {0.5, 2.0}) {
        const GammaTable gm = gamma_tables(compute_gpt(sampled("disk:" + std::to_string(r), 256), 0.0, 5));
        CHECK(std::abs(gm.g2(1, 1) - Complex(-r * r, 0)) < 1e-12);
        CHECK(gm.gamma1.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("gamma tables of the ellipse") {
    const GammaTable gm = gamma_tables(compute_gpt(sampled("ellipse:2,1", 1024), 0.0, 4));
    CHECK(std::abs(gm.g2(1, 1) - Complex(-2.25, 0)) < 1e-10);
    CHECK(std::abs(gm.g1(1, 1) - Complex(0.75, 0)) < 1e-10);
    CHECK(std::abs(gm.g2(1, 1).imag()) < 1e-8 * std::abs(gm.g2(1, 1)));
}

TEST_CASE("rotation acts on gamma by phases") {
    const double theta = 0.53;
    char deg[32];
    std::snprintf(deg, sizeof deg, "%.17g", theta * 180 / pi);
    const GammaTable a = gamma_tables(compute_gpt(sampled("kite", 1024), 0.0, 3));
    const GammaTable b = gamma_tables(compute_gpt(sampled(std::string("kite@rotate=") + deg, 1024), 0.0, 3));
    CHECK(std::abs(std::abs(a.g2(1, 1)) - std::abs(b.g2(1, 1))) < 1e-8);
    CHECK(std::abs(b.g1(1, 1) - std::polar(1.0, 2 * theta) * a.g1(1, 1)) < 1e-8);
    CHECK(std::abs(b.g2(2, 1) - std::polar(1.0, theta) * a.g2(2, 1)) < 1e-8);
}

TEST_CASE("exterior field of the insulated unit disk under h = x") {
    const auto sb = sampled("disk:1", 256);
    HarmonicSource h;
    h.ac = {1.0};
    const std::vector<Complex> pts{{2.0, 0.0}, {0.3, -2.5}, {-4.0, 3.0}};
    const ExteriorField f = exterior_field(sb, 0.0, h, pts);
    // u = x + x / |x|^2; with u = h - Re sum beta_m z^{-m} this is beta_1 = -1.
    CHECK(std::abs(f.beta[0] - Complex(-1, 0)) < 1e-12);
    for (std::size_t m = 1; m < f.beta.size(); ++m) CHECK(std::abs(f.beta[m]) < 1e-12);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i].real(), r2 = std::norm(pts[i]);
        CHECK(std::abs(f.multipole[i] - (x + x / r2)) < 1e-12);
        CHECK(std::abs(f.direct[i] - (x + x / r2)) < 1e-10);
    }
}

TEST_CASE("constant sources are not perturbed") {
    const auto sb = sampled("kite", 256);
    HarmonicSource h;
    h.a0 = 2.5;
    const std::vector<Complex> pts{{5.0, 0.0}, {0.0, -6.0}};
    const ExteriorField f = exterior_field(sb, 0.0, h, pts);
    for (const auto& b : f.beta) CHECK(std::abs(b) == 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(f.multipole[i] == doctest::Approx(2.5));
        CHECK(f.direct[i] == doctest::Approx(2.5).epsilon(1e-12));
    }
}

TEST_CASE("ellipse dipole coefficient") {
    const auto sb = sampled("ellipse:2,1", 1024);
    HarmonicSource h;
    h.ac = {1.0};
    const ExteriorField f = exterior_field(sb, 0.0, h, {{6.0, 0.0}});
    CHECK(std::abs(f.beta[0] - Complex(-1.5, 0)) < 1e-10);
}

TEST_CASE("multipole expansion matches direct evaluation at radius 6") {
    const auto sb = sampled("ellipse:2,1", 1024);
    for (int variant = 0; variant < 2; ++variant) {
        HarmonicSource h;
        if (variant == 0) {
            h.ac = {1.0};
        } else {
            h.a0 = 0.3;
            h.ac = {0.5, 0.0, -0.2};
            h.as = {0.0, 1.0};
        }
        std::vector<Complex> pts;
        for (int j = 0; j < 48; ++j) pts.push_back(std::polar(6.0, 2 * pi * j / 48 + 0.1));
        // A cubic source decays more slowly and needs a longer expansion.
        const ExteriorField f = exterior_field(sb, 0.0, h, pts, variant == 0 ? 8 : 12);
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(f.multipole[i] - f.direct[i]));
        CAPTURE(variant);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("evaluation points too close to the inclusion") {
    const auto sb = sampled("ellipse:2,1", 128);
    HarmonicSource h;
    h.ac = {1.0};
    CHECK(code_of([&] { exterior_field(sb, 0.0, h, {{2.5, 0.0}}); }) == ErrorCode::EvaluationRegion);
}

TEST_CASE("scaling homogeneity") {
    const GptTable d1 = compute_gpt(sampled("disk:1", 256), 0.0, 3);
    const GptTable d2 = compute_gpt(sampled("disk:2", 256), 0.0, 3);
    CHECK(d1.cc(0, 0) == doctest::Approx(-2 * pi).epsilon(1e-12));
    CHECK(d2.cc(0, 0) == doctest::Approx(-8 * pi).epsilon(1e-12));
    CHECK(d2.cc(0, 0) / d1.cc(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(d2.cc(1, 1) / d1.cc(1, 1) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(gpt_scaling_check(d1, d2, 2.0).passed);
    CHECK(gpt_scaling_check(d1, d1, 1.0).passed);
    CHECK(gpt_scaling_check(d1, d1, 1.0).value == 0.0);

    const GptTable s1 = compute_gpt(sampled("star:2,0.4,3", 512), 0.0, 4);
    const GptTable s3 = compute_gpt(sampled("star:2,0.4,3@scale=1.3", 512), 0.0, 4);
    CHECK(gpt_scaling_check(s1, s3, 1.3).passed);
    // A wrong factor is reported, not thrown.
    const Check bad = gpt_scaling_check(s1, s3, 1.2);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("order limits") {
    const auto sb = sampled("ellipse:2,1", 64);
    CHECK(code_of([&] { compute_gpt(sb, 0.0, 9); }) == ErrorCode::ResolutionInsufficient);
    CHECK(code_of([&] { compute_gpt(sb, 0.0, 0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { compute_gpt(sampled("ellipse:2,1", 512), 0.0, 25); }) == ErrorCode::InvalidArgument);
    CHECK_NOTHROW(compute_gpt(sb, 0.0, 8));
}

TEST_CASE("repeated computation is bitwise identical") {
    const auto sb = sampled("kite", 256);
    const GptTable a = compute_gpt(sb, 0.0, 5);
    const GptTable b = compute_gpt(sb, 0.0, 5);
    CHECK(max_abs(a.cc - b.cc) == 0.0);
    CHECK(max_abs(a.cs - b.cs) == 0.0);
    CHECK(max_abs(a.sc - b.sc) == 0.0);
    CHECK(max_abs(a.ss - b.ss) == 0.0);
}
