#include "gptmap/io.hpp"

#include "gptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gptmap::io {

namespace {

Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json matrix_json(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json complex_list(const std::vector<Complex>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(complex_json(z));
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

} // namespace

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const GptTable& gpt, const Json& provenance) {
    Json j;
    j["kind"] = "gpt_table";
    j["provenance"] = provenance;
    j["order"] = gpt.order;
    j["k"] = gpt.k;
    j["lambda"] = gpt.lambda;
    j["shape"] = gpt.shape;
    j["nodes_per_component"] = gpt.nodes_per_component;
    j["components"] = gpt.components;
    j["index_convention"] = "block[m-1][n-1]; first letter = tested harmonic P_m, second = source P_n";
    j["cc"] = matrix_json(gpt.cc);
    j["cs"] = matrix_json(gpt.cs);
    j["sc"] = matrix_json(gpt.sc);
    j["ss"] = matrix_json(gpt.ss);
    return j;
}

Json to_json(const GammaTable& gamma, const Json& provenance) {
    Json j;
    j["kind"] = "gamma_table";
    j["provenance"] = provenance;
    j["order"] = gamma.order;
    j["k"] = gamma.k;
    j["shape"] = gamma.shape;
    j["nodes_per_component"] = gamma.nodes_per_component;
    j["components"] = gamma.components;
    j["gamma1"] = matrix_json(gamma.gamma1);
    j["gamma2"] = matrix_json(gamma.gamma2);
    return j;
}

Json to_json(const ShapeDescriptors& d) {
    Json j;
    j["ratios"] = complex_list(d.ratios);
    j["moduli"] = d.moduli;
    j["relative_phases"] = d.relative_phases;
    j["reference_index"] = d.reference_index;
    return j;
}

Json to_json(const ConformalCoefficients& coeffs, const Json& provenance) {
    Json j;
    j["kind"] = "conformal_coefficients";
    j["provenance"] = provenance;
    j["N"] = coeffs.N;
    j["c"] = coeffs.c;
    j["mu"] = complex_list(coeffs.mu);
    j["B"] = complex_list(coeffs.B);
    j["descriptors"] = to_json(shape_descriptors(coeffs));
    return j;
}

Json to_json(const ValidationReport& report, const Json& provenance) {
    Json j;
    j["kind"] = "validation_report";
    j["provenance"] = provenance;
    j["subject"] = report.subject;
    j["passed"] = report.all_mandatory_passed();
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["reference"] = c.reference;
        e["tolerance"] = c.tolerance;
        e["relation"] = to_string(c.relation);
        e["source"] = to_string(c.source);
        e["mandatory"] = c.mandatory;
        e["passed"] = c.passed;
        e["note"] = c.note;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json shape_json(const SampledBoundary& sb) {
    Json j;
    j["label"] = sb.label;
    Json comps = Json::array();
    for (int c = 0; c < sb.components; ++c) {
        Json nodes = Json::array();
        for (auto i = sb.component_begin(c); i < sb.component_end(c); ++i)
            nodes.push_back(Json::array({sb.nodes[i].real(), sb.nodes[i].imag()}));
        comps.push_back(std::move(nodes));
    }
    j["components"] = std::move(comps);
    return j;
}

std::string image_csv(const std::vector<Complex>& image) {
    std::ostringstream os;
    os << "theta,re,im\n";
    const double n = static_cast<double>(image.size());
    for (std::size_t j = 0; j < image.size(); ++j)
        os << format_double(2.0 * std::numbers::pi * static_cast<double>(j) / n) << ','
           << format_double(image[j].real()) << ',' << format_double(image[j].imag()) << '\n';
    return os.str();
}

std::string eigenvalues_csv(const SpectralData& spec) {
    std::ostringstream os;
    os << "j,lambda\n";
    for (int j = 0; j < spec.count(); ++j) os << j + 1 << ',' << format_double(spec.eigenvalues[j]) << '\n';
    return os.str();
}

std::string gpt_csv(const GptTable& gpt) {
    std::ostringstream os;
    os << "block,m,n,value\n";
    const std::pair<const char*, const Eigen::MatrixXd*> blocks[] = {
        {"cc", &gpt.cc}, {"cs", &gpt.cs}, {"sc", &gpt.sc}, {"ss", &gpt.ss}};
    for (const auto& [name, m] : blocks)
        for (int i = 0; i < gpt.order; ++i)
            for (int k = 0; k < gpt.order; ++k)
                os << name << ',' << i + 1 << ',' << k + 1 << ',' << format_double((*m)(i, k)) << '\n';
    return os.str();
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_double(m(i, j));
        }
        os << '\n';
    }
    return os.str();
}

std::string svg_overlay(const std::vector<std::vector<Complex>>& boundary, const std::vector<Complex>& image,
                        const std::string& title) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto extend = [&](const std::vector<Complex>& pts) {
        for (const auto& p : pts) {
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
    };
    for (const auto& b : boundary) extend(b);
    extend(image);
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    const double stroke = 0.004 * std::max(xmax - xmin, ymax - ymin);

    // y is flipped so the figure shows the usual orientation.
    auto path = [&](const std::vector<Complex>& pts) {
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i)
            d += (i ? " L" : "M") + fixed(pts[i].real()) + "," + fixed(-pts[i].imag());
        return d + " Z";
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"" << fixed(xmin) << ' '
       << fixed(-ymax) << ' ' << fixed(xmax - xmin) << ' ' << fixed(ymax - ymin) << "\">\n";
    os << "  <title>" << title << "</title>\n";
    os << "  <rect x=\"" << fixed(xmin) << "\" y=\"" << fixed(-ymax) << "\" width=\"" << fixed(xmax - xmin)
       << "\" height=\"" << fixed(ymax - ymin) << "\" fill=\"white\"/>\n";
    for (const auto& b : boundary)
        os << "  <path d=\"" << path(b) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << fixed(3 * stroke)
           << "\"/>\n";
    if (!image.empty())
        os << "  <path d=\"" << path(image) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fixed(stroke)
           << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

} // namespace gptmap::io
