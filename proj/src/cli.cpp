#include "gptmap/cli.hpp"

#include "gptmap/conformal.hpp"
#include "gptmap/error.hpp"
#include "gptmap/spectral.hpp"
#include "gptmap/validate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gptmap::cli {

namespace {

constexpr int kImageSamples = 2048;
constexpr const char* kVersion = "1.0.0";

std::string complex_text(Complex z) {
    return io::format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + io::format_double(std::abs(z.imag())) + "i";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"shape", "nodes", "k", "order", "truncation", "out", "format",
                                            "modes", "spectral-nodes", "dump-matrices"};
    return keys;
}

std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (key == "dump-matrices") {
            if (value == "true" || value == "1") args.push_back("--dump-matrices");
            else if (value != "false" && value != "0")
                throw ConfigError(path + ":" + std::to_string(lineno) + ": dump-matrices expects true/false");
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(std::string("invalid ") + what + " list '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError(std::string("empty ") + what + " list");
    return out;
}

struct Prepared {
    ShapeSpec spec;
    BoundaryCurve curve;
    SampledBoundary sb;
};

Prepared prepare(const RunConfig& config, int nodes) {
    Prepared p{parse_shape(config.shape), {}, {}};
    p.curve = make_shape(p.spec);
    p.sb = sample(p.curve, nodes);
    return p;
}

std::vector<std::vector<Complex>> boundary_traces(const BoundaryCurve& curve, int samples) {
    std::vector<std::vector<Complex>> out;
    for (const auto& c : curve.components) {
        BoundaryCurve single{{c}, curve.label};
        out.push_back(trace(single, samples));
    }
    return out;
}

void require_single_component(const SampledBoundary& sb, const char* what) {
    if (sb.components != 1)
        throw Error(ErrorCode::UnsupportedGeometry,
                    std::string(what) + " requires a simply connected domain (one boundary curve); shape has " +
                        std::to_string(sb.components) + " components");
}

double max_abs_defect(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
    return worst;
}

} // namespace

int RunConfig::max_truncation() const { return *std::max_element(truncations.begin(), truncations.end()); }

int RunConfig::resolved_order() const {
    if (order > 0) return order;
    int o = 6;
    if (command == "map") o = std::max(max_truncation(), 3);
    if (command == "validate") o = std::max(max_truncation() + 2, 6);
    return std::min({o, kMaxGptOrder, std::max(1, nodes / 8)});
}

RunConfig parse_args(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            const auto file_args = read_config_file(argv[i + 1]);
            args.insert(args.begin(), file_args.begin(), file_args.end());
            ++i;
        } else if (a.rfind("--config=", 0) == 0) {
            const auto file_args = read_config_file(a.substr(9));
            args.insert(args.begin(), file_args.begin(), file_args.end());
        } else {
            args.push_back(a);
        }
    }

    RunConfig config;
    std::string truncation = "1,2,3,4,5,6";
    std::string formats;
    std::string out = ".";

    CLI::App app{"Generalized polarization tensors and exterior conformal maps of planar domains", "gptmap"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--shape", config.shape, "Shape descriptor, e.g. ellipse:2,1 or star:2,0.4,3@rotate=30");
    app.add_option("--nodes", config.nodes, "Quadrature nodes per boundary component");
    app.add_option("--k", config.k, "Inclusion conductivity (0 = insulating)");
    app.add_option("--order", config.order, "GPT order (0 = command default)");
    app.add_option("--truncation", truncation, "Comma-separated map truncation orders N");
    app.add_option("--out", out, "Output directory");
    app.add_option("--format", formats, "Comma-separated subset of json,csv,svg");
    app.add_option("--modes", config.modes, "Number of NP eigenpairs J");
    app.add_option("--spectral-nodes", config.spectral_nodes, "Nodes used by the spectral cross-check in validate");
    app.add_flag("--dump-matrices", config.dump_matrices, "Write the assembled Nystrom matrices as CSV");
    app.set_version_flag("--version", kVersion);
    app.footer("Config file: --config FILE with key=value lines (flag names as keys); flags override the file.");

    for (const char* name : {"gpt", "map", "validate", "eigs"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        sub->callback([&config, name] { config.command = name; });
    }
    app.get_subcommand("gpt")->description("Compute GPT and gamma tables");
    app.get_subcommand("map")->description("Recover conformal map coefficients and boundary images");
    app.get_subcommand("validate")->description("Run the invariant suite for a shape");
    app.get_subcommand("eigs")->description("Neumann-Poincare eigenvalues");
    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string("gptmap ") + kVersion + "\n");
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    config.truncations = parse_int_list(truncation, "truncation");
    std::sort(config.truncations.begin(), config.truncations.end());
    config.truncations.erase(std::unique(config.truncations.begin(), config.truncations.end()),
                             config.truncations.end());
    config.out = out;
    if (!formats.empty()) {
        std::stringstream ss(formats);
        std::string f;
        while (std::getline(ss, f, ',')) config.formats.insert(trim(f));
    }
    validate_config(config);
    return config;
}

void validate_config(const RunConfig& config) {
    if (config.command != "gpt" && config.command != "map" && config.command != "validate" && config.command != "eigs")
        throw ConfigError("unknown command '" + config.command + "'");
    if (config.nodes < 16 || config.nodes % 2 != 0) throw ConfigError("--nodes must be even and >= 16");
    if (!std::isfinite(config.k) || config.k < 0.0 || config.k == 1.0)
        throw ConfigError("--k must be finite, >= 0 and != 1");
    if (config.order < 0 || config.order > kMaxGptOrder) throw ConfigError("--order must be in [0, 24]");
    const int order = config.resolved_order();
    if (order > config.nodes / 8) throw ConfigError("--order needs at least 8 nodes per order");
    for (int n : config.truncations)
        if (n < 1 || n > kMaxGptOrder) throw ConfigError("truncation orders must be in [1, 24]");
    if (config.command == "map" && config.max_truncation() > order)
        throw ConfigError("largest truncation exceeds the GPT order");
    if (config.command == "map" && order < 2) throw ConfigError("map recovery needs GPT order >= 2");
    if (config.modes < 0) throw ConfigError("--modes must be >= 0");
    if (config.command == "eigs" && config.modes > config.nodes / 4) throw ConfigError("--modes must be in [0, nodes/4]");
    if (config.spectral_nodes < 16 || config.spectral_nodes % 2 != 0)
        throw ConfigError("--spectral-nodes must be even and >= 16");
    for (const auto& f : config.formats)
        if (f != "json" && f != "csv" && f != "svg") throw ConfigError("unknown format '" + f + "'");
    try {
        (void)make_shape(parse_shape(config.shape));
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

io::Json provenance(const RunConfig& config) {
    io::Json p;
    p["tool"] = "gptmap";
    p["version"] = kVersion;
    p["command"] = config.command;
    p["shape"] = to_string(parse_shape(config.shape));
    p["nodes"] = config.nodes;
    p["k"] = config.k;
    p["lambda"] = lambda_from_conductivity(config.k);
    p["order"] = config.resolved_order();
    p["truncation"] = config.truncations;
    p["modes"] = config.modes;
    if (config.command == "validate") p["spectral_nodes"] = config.spectral_nodes;
    return p;
}

int cmd_gpt(const RunConfig& config, std::ostream& log) {
    const Prepared p = prepare(config, config.nodes);
    const NpMatrix np = assemble_np(p.sb);
    const GptTable gpt = compute_gpt(np, config.k, config.resolved_order());
    const GammaTable gamma = gamma_tables(gpt);
    const io::Json prov = provenance(config);

    if (config.wants("json")) {
        io::write_file(config.out / "gpt.json", io::to_json(gpt, prov).dump(2) + "\n");
        io::write_file(config.out / "gamma.json", io::to_json(gamma, prov).dump(2) + "\n");
        io::write_file(config.out / "shape.json", io::shape_json(p.sb).dump(2) + "\n");
    }
    if (config.wants("csv")) io::write_file(config.out / "gpt.csv", io::gpt_csv(gpt));
    if (config.dump_matrices) {
        io::write_file(config.out / "np_matrix.csv", io::matrix_csv(np.entries));
        if (p.sb.components == 1)
            io::write_file(config.out / "single_layer.csv", io::matrix_csv(assemble_single_layer(p.sb).entries));
    }
    log << "shape " << p.sb.label << ", " << p.sb.components << " component(s), " << p.sb.nodes_per_component
        << " nodes each, order " << gpt.order << "\n";
    log << "gamma2_11 = " << complex_text(gamma.g2(1, 1)) << "\n";
    log << "block symmetry defect = " << block_symmetry_error(gpt) << "\n";
    return kSuccess;
}

int cmd_map(const RunConfig& config, std::ostream& log) {
    const Prepared p = prepare(config, config.nodes);
    require_single_component(p.sb, "conformal map recovery");
    const GammaTable gamma = gamma_tables(compute_gpt(p.sb, config.k, config.resolved_order()));
    const ConformalCoefficients coeffs = recover_coefficients(gamma, config.max_truncation());

    const auto traces = boundary_traces(p.curve, kImageSamples);
    const double diam = diameter(traces.front());
    io::Json images = io::Json::array();
    for (int n : config.truncations) {
        const auto image = map_image(coeffs, n, kImageSamples);
        const double h = polyline_hausdorff_distance(image, traces.front());
        io::Json e;
        e["N"] = n;
        e["hausdorff"] = h;
        e["hausdorff_over_diameter"] = h / diam;
        images.push_back(std::move(e));
        const std::string stem = "phi" + std::to_string(n);
        if (config.wants("csv")) io::write_file(config.out / (stem + ".csv"), io::image_csv(image));
        if (config.wants("svg"))
            io::write_file(config.out / (stem + ".svg"),
                           io::svg_overlay(traces, image, p.sb.label + ", N=" + std::to_string(n)));
        log << "N=" << n << "  Hausdorff = " << io::format_double(h) << "  (" << h / diam * 100.0
            << "% of diameter)\n";
    }
    if (config.wants("json")) {
        io::Json j = io::to_json(coeffs, provenance(config));
        j["diameter"] = diam;
        j["images"] = std::move(images);
        io::write_file(config.out / "mu.json", j.dump(2) + "\n");
    }
    log << "c = " << io::format_double(coeffs.c) << "\n";
    for (int l = 0; l <= coeffs.N; ++l)
        log << "mu_" << l << " = " << complex_text(coeffs.mu[l]) << "\n";
    return kSuccess;
}

int cmd_eigs(const RunConfig& config, std::ostream& log) {
    const Prepared p = prepare(config, config.nodes);
    require_single_component(p.sb, "the NP eigendecomposition");
    const NpMatrix np = assemble_np(p.sb);
    const SpectralData spec = np_eigendecomposition(np, assemble_single_layer(p.sb), config.modes);
    if (config.wants("csv")) io::write_file(config.out / "eigs.csv", io::eigenvalues_csv(spec));
    if (config.wants("json")) {
        io::Json j;
        j["kind"] = "np_eigenvalues";
        j["provenance"] = provenance(config);
        j["eigenvalues"] = spec.eigenvalues;
        io::write_file(config.out / "eigs.json", j.dump(2) + "\n");
    }
    for (int j = 0; j < std::min(spec.count(), 8); ++j)
        log << "lambda_" << j + 1 << " = " << io::format_double(spec.eigenvalues[j]) << "\n";
    return kSuccess;
}

ValidationReport validation_suite(const RunConfig& config) {
    const Prepared p = prepare(config, config.nodes);
    const int order = config.resolved_order();
    ValidationReport report;
    report.subject = p.sb.label + " at " + std::to_string(config.nodes) + " nodes per component";

    const NpMatrix np = assemble_np(p.sb);
    {
        const Eigen::VectorXd w = weight_vector(p.sb);
        double worst = 0.0;
        Eigen::VectorXd x(static_cast<Eigen::Index>(p.sb.size()));
        for (std::size_t i = 0; i < p.sb.size(); ++i) x[static_cast<Eigen::Index>(i)] = p.sb.nodes[i].real() + 1.0;
        for (const Eigen::VectorXd& phi : {Eigen::VectorXd(Eigen::VectorXd::Ones(x.size())), x}) {
            const double defect = std::abs(w.dot(np.entries * phi) - 0.5 * w.dot(phi)) / w.dot(phi.cwiseAbs());
            worst = std::max(worst, defect);
        }
        report.add(make_check("np_adjoint_constant_identity", worst, 0.0, 1e-8, Relation::Below,
                              ReferenceSource::Exact, true, "sum w K*phi = 1/2 sum w phi"));
    }

    const GptTable gpt = compute_gpt(np, config.k, order);
    const GammaTable gamma = gamma_tables(gpt);
    report.add(make_check("gpt_block_symmetry", block_symmetry_error(gpt), 0.0, 1e-6, Relation::Below,
                          ReferenceSource::Exact));
    {
        ShapeSpec scaled = p.spec;
        scaled.scale *= 1.7;
        const GptTable gpt2 = compute_gpt(sample(make_shape(scaled), config.nodes), config.k, order);
        report.add(gpt_scaling_check(gpt, gpt2, 1.7));
    }

    if (config.k != 0.0) {
        report.add(make_check("conformal_checks_skipped", 0.0, 0.0, 0.0, Relation::Near, ReferenceSource::Exact, false,
                              "map recovery applies to insulating inclusions (k = 0) only"));
        return report;
    }

    const Complex g11 = gamma.g2(1, 1);
    const IdentitySides id = consistency_identity(gamma);
    const double id_residual = std::abs(id.lhs - id.rhs);

    if (p.sb.components > 1) {
        report.add(make_check("consistency_identity_negative_control", id_residual, 0.0, 5.0,
                              Relation::Above, ReferenceSource::Analytic, true,
                              "expected to fail: identity holds only for simply connected domains"));
        if (g11.real() < 0.0) {
            const ConformalCoefficients formal = formal_coefficients(gamma, std::max(1, order - 2));
            const auto res = vanishing_residuals(formal, gamma, order);
            report.add(make_check("vanishing_residuals_negative_control", *std::max_element(res.begin(), res.end()),
                                  0.0, 1e-2, Relation::Above, ReferenceSource::Analytic, true,
                                  "expected to fail: multiply connected boundary"));
        }
        report.add(make_check("gamma2_31", id.lhs.real(), 0.0, 0.0, Relation::Near, ReferenceSource::Analytic, false,
                              "reported value"));
        report.add(make_check("gamma2_31_identity_rhs", id.rhs.real(), 0.0, 0.0,
                              Relation::Near, ReferenceSource::Analytic, false, "reported value"));
        return report;
    }

    report.add(make_check("gamma2_11_phase", std::abs(g11.imag()) / std::abs(g11), 0.0, 1e-8, Relation::Below,
                          ReferenceSource::Exact));
    report.add(make_check("gamma2_11_negative", g11.real(), 0.0, 0.0, Relation::Below, ReferenceSource::Exact));
    report.add(make_check("consistency_identity", id_residual / (std::abs(id.lhs) + 1.0), 0.0, 1e-4, Relation::Below,
                          ReferenceSource::Analytic, true, "gamma2_31 = gamma1_11 gamma2_11 + gamma2_21^2/gamma2_11"));

    const int n_max = std::min(config.max_truncation(), order);
    const ConformalCoefficients coeffs = recover_coefficients(gamma, n_max);
    report.add(make_check("reciprocal_series_residual", reciprocal_residual(coeffs), 0.0, 1e-10, Relation::Below,
                          ReferenceSource::Exact));
    const int lmax = std::min(order, n_max + 2);
    if (lmax >= 2) {
        const auto res = vanishing_residuals(coeffs, gamma, lmax);
        report.add(make_check("vanishing_residuals_max", *std::max_element(res.begin(), res.end()), 0.0, 1e-5,
                              Relation::Below, ReferenceSource::Analytic, true,
                              "levels 2.." + std::to_string(lmax)));
    }

    if (const auto* disk = std::get_if<DiskShape>(&p.spec.kind)) {
        const double r = disk->radius * p.spec.scale;
        const Complex z0 = p.spec.offset + p.spec.scale * std::polar(1.0, p.spec.rotation) * disk->center;
        double rest = 0.0;
        for (int l = 1; l <= coeffs.N; ++l) rest = std::max(rest, std::abs(coeffs.mu[l]));
        report.add(make_check("disk_c", coeffs.c, r, 1e-6, Relation::Near, ReferenceSource::Analytic));
        report.add(make_check("disk_mu0", std::abs(coeffs.mu[0] - z0), 0.0, 1e-8, Relation::Below,
                              ReferenceSource::Analytic));
        report.add(make_check("disk_higher_mu", rest, 0.0, 1e-8, Relation::Below, ReferenceSource::Analytic));
    } else if (const auto* e = std::get_if<EllipseShape>(&p.spec.kind)) {
        const double s = p.spec.scale;
        double rest = 0.0;
        for (int l = 2; l <= coeffs.N; ++l) rest = std::max(rest, std::abs(coeffs.mu[l]));
        report.add(make_check("ellipse_c", coeffs.c, s * (e->a + e->b) / 2, 1e-4, Relation::Near,
                              ReferenceSource::Analytic));
        if (coeffs.N >= 1)
            report.add(make_check("ellipse_mu1_modulus", std::abs(coeffs.mu[1]), s * std::abs(e->a - e->b) / 2, 1e-4,
                                  Relation::Near, ReferenceSource::Analytic));
        report.add(make_check("ellipse_higher_mu", rest, 0.0, 1e-5, Relation::Below, ReferenceSource::Analytic));
    }

    const auto traces = boundary_traces(p.curve, kImageSamples);
    const double diam = diameter(traces.front());
    for (int n : config.truncations) {
        if (n > coeffs.N) continue;
        const double h = polyline_hausdorff_distance(map_image(coeffs, n, kImageSamples), traces.front());
        report.add(make_check("hausdorff_over_diameter_N" + std::to_string(n), h / diam, 0.0, 0.0, Relation::Near,
                              ReferenceSource::Analytic, false, "boundary recovery error"));
    }
    const ShapeDescriptors desc = shape_descriptors(coeffs);
    for (std::size_t j = 0; j < desc.moduli.size(); ++j)
        report.add(make_check("descriptor_modulus_" + std::to_string(j + 1), desc.moduli[j], 0.0, 0.0, Relation::Near,
                              ReferenceSource::Analytic, false, "|mu_j / mu_-1|"));

    // Spectral cross-check at its own resolution.
    const SampledBoundary ssb = sample(p.curve, config.spectral_nodes);
    const NpMatrix snp = assemble_np(ssb);
    const SingleLayerMatrix ssl = assemble_single_layer(ssb);
    const int modes = std::min(config.modes, config.spectral_nodes / 4);
    const SpectralData spec = np_eigendecomposition(snp, ssl, modes);
    double max_abs = 0.0;
    for (double l : spec.eigenvalues) max_abs = std::max(max_abs, std::abs(l));
    report.add(make_check("np_spectrum_bound", max_abs, 0.0, 0.5, Relation::Below, ReferenceSource::Exact));
    const Eigen::MatrixXd gram = energy_gram(spec, ssl);
    report.add(make_check("energy_orthonormality",
                          (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 0.0,
                          1e-8, Relation::Below, ReferenceSource::Exact));
    const int sorder = std::min({order, 4, config.spectral_nodes / 8});
    const GptTable direct = compute_gpt(snp, config.k, sorder);
    const GptTable spectral = spectral_gpt_table(spec, ssl, config.k, sorder);
    double worst = 0.0;
    worst = std::max(worst, max_abs_defect(spectral.cc, direct.cc));
    worst = std::max(worst, max_abs_defect(spectral.cs, direct.cs));
    worst = std::max(worst, max_abs_defect(spectral.sc, direct.sc));
    worst = std::max(worst, max_abs_defect(spectral.ss, direct.ss));
    report.add(make_check("spectral_vs_direct_gpt", worst, 0.0, 1e-4, Relation::Below, ReferenceSource::Analytic, true,
                          "entries m,n <= " + std::to_string(sorder) + ", J = " + std::to_string(modes)));
    return report;
}

int cmd_validate(const RunConfig& config, std::ostream& log) {
    const ValidationReport report = validation_suite(config);
    if (config.wants("json"))
        io::write_file(config.out / "report.json", io::to_json(report, provenance(config)).dump(2) + "\n");
    log << format_table(report);
    const bool ok = report.all_mandatory_passed();
    log << (ok ? "all mandatory checks passed\n" : "mandatory checks FAILED\n");
    return ok ? kSuccess : kValidationFailure;
}

int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(argc, argv);
    } catch (const HelpRequested& h) {
        log << h.what();
        return kSuccess;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    try {
        if (config.command == "gpt") return cmd_gpt(config, log);
        if (config.command == "map") return cmd_map(config, log);
        if (config.command == "validate") return cmd_validate(config, log);
        return cmd_eigs(config, log);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kComputationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kComputationError;
    }
}

} // namespace gptmap::cli
