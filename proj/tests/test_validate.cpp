#include "gptmap/conformal.hpp"
#include "gptmap/error.hpp"
#include "gptmap/gpt.hpp"
#include "gptmap/report.hpp"
#include "gptmap/validate.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gptmap;
using std::numbers::pi;

namespace {

GammaTable gamma_for(const std::string& shape, int m, int order) {
    return gamma_tables(compute_gpt(sample(make_shape(parse_shape(shape)), m), 0.0, order));
}

std::vector<Complex> circle(double r, int n, double phase = 0.0) {
    std::vector<Complex> out;
    for (int j = 0; j < n; ++j) out.push_back(std::polar(r, 2 * pi * j / n + phase));
    return out;
}

} // namespace

TEST_CASE("consistency identity on the two-disk union") {
    const IdentitySides s = consistency_identity(gamma_for("union-disks:2", 1024, 3));
    CHECK(s.lhs.real() == doctest::Approx(-8.03).epsilon(0.1 / 8.03));
    CHECK(s.rhs.real() == doctest::Approx(-0.25).epsilon(0.05 / 0.25));
    CHECK(std::abs(s.lhs.imag()) < 1e-10);
    CHECK(std::abs(s.lhs - s.rhs) > 5.0);
}

TEST_CASE("consistency identity on simply connected shapes") {
    const IdentitySides d = consistency_identity(gamma_for("disk:1", 256, 3));
    CHECK(std::abs(d.lhs) < 1e-12);
    CHECK(std::abs(d.rhs) < 1e-12);

    const IdentitySides e = consistency_identity(gamma_for("ellipse:2,1", 1024, 3));
    CHECK(std::abs(e.lhs - e.rhs) / (std::abs(e.lhs) + 1.0) < 1e-6);

    for (const char* shape : {"kite", "star:2,0.4,3", "perturbed-ellipse:2,1,0.1,3"}) {
        CAPTURE(shape);
        const IdentitySides s = consistency_identity(gamma_for(shape, 1024, 3));
        CHECK(std::abs(s.lhs - s.rhs) / (std::abs(s.lhs) + 1.0) < 1e-4);
    }
}

TEST_CASE("consistency identity preconditions") {
    GammaTable g;
    g.order = 3;
    g.gamma1 = Eigen::MatrixXcd::Zero(3, 3);
    g.gamma2 = Eigen::MatrixXcd::Zero(3, 3);
    try {
        (void)consistency_identity(g);
        FAIL("expected degenerate-domain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateDomain);
    }
    g.order = 2;
    CHECK_THROWS_AS((void)consistency_identity(g), Error);
}

TEST_CASE("Hausdorff distance") {
    const auto a = circle(1.0, 1024);
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(polyline_hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, circle(1.1, 1024)) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(polyline_hausdorff_distance(a, circle(1.1, 1024, 0.001)) == doctest::Approx(0.1).epsilon(1e-4));
    // Point-to-segment distance does not depend on where the samples fall.
    const auto offset = circle(1.0, 1024, pi / 1024);
    CHECK(hausdorff_distance(a, offset) > 1e-3);
    CHECK(polyline_hausdorff_distance(a, offset) < 1e-5);
    CHECK(hausdorff_distance({Complex(0, 0)}, {Complex(3, 4)}) == doctest::Approx(5.0));
    CHECK(diameter(a) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)hausdorff_distance({}, a), Error);
}

TEST_CASE("equivalent ellipse of an ellipse is exact") {
    const auto curve = make_shape(parse_shape("ellipse:2,1"));
    const auto c = recover_coefficients(gamma_tables(compute_gpt(sample(curve, 1024), 0.0, 3)), 1);
    CHECK(polyline_hausdorff_distance(map_image(c, 1, 2048), trace(curve, 2048)) < 1e-5);
    CHECK(hausdorff_distance(map_image(c, 1, 2048), trace(curve, 2048)) < 1e-5);
}

TEST_CASE("shape descriptors") {
    auto descriptors = [](const std::string& shape) {
        return shape_descriptors(recover_coefficients(gamma_for(shape, 1024, 6), 6));
    };

    const auto disk = descriptors("disk:1.7,0.4,-0.3");
    for (double m : disk.moduli) CHECK(m < 1e-10);
    CHECK(disk.reference_index == 0);

    const auto a = descriptors("ellipse:2,1");
    const auto b = descriptors("ellipse:4,2@shift=1.5,-2");
    REQUIRE(a.ratios.size() == 6);
    CHECK(std::abs(a.ratios[0] - 1.0 / 3.0) < 1e-10);
    for (std::size_t j = 0; j < a.ratios.size(); ++j) CHECK(std::abs(a.ratios[j] - b.ratios[j]) < 1e-8);

    const auto s = descriptors("star:2,0.4,3");
    const auto r = descriptors("star:2,0.4,3@rotate=30");
    for (std::size_t j = 0; j < s.moduli.size(); ++j) {
        CHECK(std::abs(s.moduli[j] - r.moduli[j]) < 1e-6);
        // Rotating the domain by theta multiplies mu_l / c by e^{i (l + 1) theta}; ratios[j] is l = j + 1.
        const Complex expect = s.ratios[j] * std::polar(1.0, (static_cast<double>(j) + 2) * pi / 6);
        CHECK(std::abs(r.ratios[j] - expect) < 1e-6);
    }
    CHECK(s.reference_index == r.reference_index);
    for (std::size_t j = 0; j < s.relative_phases.size(); ++j)
        if (s.moduli[j] > 1e-6) CHECK(std::abs(std::remainder(s.relative_phases[j] - r.relative_phases[j], 2 * pi)) < 1e-6);
}

TEST_CASE("checks and reports") {
    CHECK(make_check("a", 1.0, 1.05, 0.1, Relation::Near, ReferenceSource::Analytic).passed);
    CHECK_FALSE(make_check("a", 1.0, 1.5, 0.1, Relation::Near, ReferenceSource::Analytic).passed);
    CHECK(make_check("b", 1e-9, 0.0, 1e-8, Relation::Below, ReferenceSource::Exact).passed);
    CHECK_FALSE(make_check("b", 1e-7, 0.0, 1e-8, Relation::Below, ReferenceSource::Exact).passed);
    CHECK(make_check("c", 7.0, 0.0, 5.0, Relation::Above, ReferenceSource::Published).passed);
    CHECK_FALSE(make_check("d", std::nan(""), 0.0, 1.0, Relation::Below, ReferenceSource::Exact).passed);

    ValidationReport rep;
    rep.subject = "demo";
    rep.add(make_check("ok", 0.0, 0.0, 1.0, Relation::Below, ReferenceSource::Exact));
    rep.add(make_check("info", 9.0, 0.0, 1.0, Relation::Below, ReferenceSource::Exact, false));
    CHECK(rep.all_mandatory_passed());
    rep.add(make_check("bad", 9.0, 0.0, 1.0, Relation::Below, ReferenceSource::Exact));
    CHECK_FALSE(rep.all_mandatory_passed());
    REQUIRE(rep.find("bad") != nullptr);
    CHECK(rep.find("missing") == nullptr);
    const std::string table = format_table(rep);
    CHECK(table.find("FAIL") != std::string::npos);
    CHECK(table.find("info") != std::string::npos);
    CHECK(table == format_table(rep));
}
