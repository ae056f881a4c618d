#include "gptmap/error.hpp"
#include "gptmap/gpt.hpp"
#include "gptmap/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gptmap;
using std::numbers::pi;

namespace {

struct Decomposed {
    SampledBoundary sb;
    NpMatrix np;
    SingleLayerMatrix sl;
    SpectralData spec;
};

Decomposed decompose(const std::string& shape, int m, int modes = kDefaultModeCount) {
    Decomposed d;
    d.sb = sample(make_shape(parse_shape(shape)), m);
    d.np = assemble_np(d.sb);
    d.sl = assemble_single_layer(d.sb);
    d.spec = np_eigendecomposition(d.np, d.sl, modes);
    return d;
}

const Decomposed& ellipse1024() {
    static const Decomposed d = decompose("ellipse:2,1", 1024);
    return d;
}

const Decomposed& star1024() {
    static const Decomposed d = decompose("star:2,0.4,3", 1024);
    return d;
}

double max_relative(const GptTable& a, const GptTable& b) {
    double worst = 0.0;
    using Block = Eigen::MatrixXd GptTable::*;
    for (Block block : {&GptTable::cc, &GptTable::cs, &GptTable::sc, &GptTable::ss}) {
        const Eigen::MatrixXd& x = a.*block;
        const Eigen::MatrixXd& y = b.*block;
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                worst = std::max(worst, std::abs(x(i, j) - y(i, j)) / std::max(1.0, std::abs(y(i, j))));
    }
    return worst;
}

} // namespace

TEST_CASE("ellipse NP spectrum") {
    const auto& d = ellipse1024();
    REQUIRE(d.spec.count() == kDefaultModeCount);
    const double q = 1.0 / 3.0;
    for (int n = 1; n <= 6; ++n) {
        const double expect = 0.5 * std::pow(q, n);
        CAPTURE(n);
        CHECK(std::abs(d.spec.eigenvalues[2 * n - 2] - expect) < 1e-6);
        CHECK(std::abs(d.spec.eigenvalues[2 * n - 1] + expect) < 1e-6);
    }
}

TEST_CASE("ellipse NP spectrum is resolution independent") {
    const auto coarse = decompose("ellipse:2,1", 512, 16);
    const auto& fine = ellipse1024();
    for (int j = 0; j < 8; ++j) CHECK(std::abs(coarse.spec.eigenvalues[j] - fine.spec.eigenvalues[j]) < 1e-10);
}

TEST_CASE("spectral data invariants") {
    for (const Decomposed* d : {&ellipse1024(), &star1024()}) {
        const auto& ev = d->spec.eigenvalues;
        for (double l : ev) CHECK(std::abs(l) < 0.5);
        // Within numerically degenerate groups (spread < 1e-9) the order is by smoothness.
        for (std::size_t j = 1; j < ev.size(); ++j) CHECK(std::abs(ev[j]) <= std::abs(ev[j - 1]) + 1e-9);
        CHECK(std::abs(ev.back()) < std::abs(ev.front()));
        const Eigen::MatrixXd gram = energy_gram(d->spec, d->sl);
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
        // Eigen-equation residual in the nodal basis.
        const Eigen::VectorXd w = weight_vector(d->sb);
        for (int j = 0; j < 8; ++j) {
            const Eigen::VectorXd phi = d->spec.eigenvectors.col(j);
            CHECK(std::abs(w.dot(phi)) < 1e-10 * w.dot(phi.cwiseAbs()));
            CHECK((d->np.entries * phi - ev[j] * phi).cwiseAbs().maxCoeff() < 1e-8 * phi.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("disk NP spectrum vanishes") {
    const auto d = decompose("disk:1.4", 512, 32);
    CHECK(d.spec.count() == 32);
    for (double l : d.spec.eigenvalues) CHECK(std::abs(l) < 1e-8);
    const Eigen::MatrixXd gram = energy_gram(d.spec, d.sl);
    CHECK((gram - Eigen::MatrixXd::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("disk GPT from the spectral sum") {
    const double r = 1.4;
    const auto d = decompose("disk:1.4", 512, 32);
    for (int n = 1; n <= 4; ++n) {
        const double expect = -2 * pi * n * std::pow(r, 2 * n);
        CHECK(gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Cos, n, Harmonic::Cos, n) ==
              doctest::Approx(expect).epsilon(1e-10));
        CHECK(gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Sin, n, Harmonic::Sin, n) ==
              doctest::Approx(expect).epsilon(1e-10));
        CHECK(std::abs(gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Cos, n, Harmonic::Sin, n)) < 1e-10);
    }
}

TEST_CASE("leading ellipse GPT entry from both methods") {
    const auto& d = ellipse1024();
    const GptTable direct = compute_gpt(d.np, 0.0, 1);
    const double s = gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Cos, 1, Harmonic::Cos, 1);
    CHECK(std::abs(s - direct.cc(0, 0)) < 1e-5 * std::abs(direct.cc(0, 0)));
}

TEST_CASE("spectral and direct GPTs agree up to order 4") {
    for (const Decomposed* d : {&ellipse1024(), &star1024()}) {
        for (double k : {0.0, 5.0}) {
            const GptTable direct = compute_gpt(d->np, k, 4);
            const GptTable spectral = spectral_gpt_table(d->spec, d->sl, k, 4);
            CAPTURE(d->sb.label);
            CAPTURE(k);
            CHECK(max_relative(spectral, direct) < 1e-4);
        }
    }
}

TEST_CASE("spectral sum is symmetric under swapping indices") {
    const auto& d = star1024();
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            const double a = gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Cos, m, Harmonic::Sin, n);
            const double b = gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Sin, n, Harmonic::Cos, m);
            CHECK(a == b);
        }
}

TEST_CASE("truncation tail") {
    const auto& d = ellipse1024();
    const Eigen::VectorXd f = harmonic_normal_derivative(3, Harmonic::Cos, d.sb);
    CHECK(spectral_tail(d.spec, d.sl, f) < 1e-6);
}

TEST_CASE("empty spectral sum") {
    const auto d = decompose("ellipse:2,1", 64, 0);
    CHECK(d.spec.count() == 0);
    CHECK(gpt_spectral(d.spec, d.sl, -0.5, Harmonic::Cos, 1, Harmonic::Cos, 1) == 0.0);
}

TEST_CASE("single mode") {
    const auto d = decompose("ellipse:2,1", 256, 1);
    REQUIRE(d.spec.count() == 1);
    CHECK(d.spec.eigenvalues[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
}

TEST_CASE("spectral preconditions") {
    const auto sb = sample(make_shape(parse_shape("ellipse:2,1")), 64);
    const auto np = assemble_np(sb);
    const auto sl = assemble_single_layer(sb);
    try {
        (void)np_eigendecomposition(np, sl, 17);
        FAIL("expected invalid-argument");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }

    // A fabricated eigenvalue on the resonance.
    SpectralData fake = np_eigendecomposition(np, sl, 2);
    fake.eigenvalues[0] = 0.5;
    try {
        (void)gpt_spectral(fake, sl, 0.5, Harmonic::Cos, 1, Harmonic::Cos, 1);
        FAIL("expected resonance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Resonance);
    }
    CHECK_THROWS_AS((void)gpt_spectral(fake, sl, 0.25, Harmonic::Cos, 1, Harmonic::Cos, 1), Error);
}
