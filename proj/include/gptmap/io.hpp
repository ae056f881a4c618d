#pragma once

#include "gptmap/conformal.hpp"
#include "gptmap/geometry.hpp"
#include "gptmap/gpt.hpp"
#include "gptmap/report.hpp"
#include "gptmap/spectral.hpp"
#include "gptmap/validate.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gptmap::io {

using Json = nlohmann::ordered_json;

/// Complex numbers serialize as [re, im].
Json complex_json(Complex z);

// Key order is fixed: "kind", "provenance", then the payload.
Json to_json(const GptTable& gpt, const Json& provenance);
Json to_json(const GammaTable& gamma, const Json& provenance);
Json to_json(const ConformalCoefficients& coeffs, const Json& provenance);
Json to_json(const ValidationReport& report, const Json& provenance);
Json to_json(const ShapeDescriptors& d);

/// {"label": ..., "components": [[[x, y], ...], ...]}
Json shape_json(const SampledBoundary& sb);

/// Rows "theta,re,im" for an image sampled at theta_j = 2 pi j / n.
std::string image_csv(const std::vector<Complex>& image);
/// Rows "j,lambda" (1-based j).
std::string eigenvalues_csv(const SpectralData& spec);
/// Rows "block,m,n,value" for every GPT entry.
std::string gpt_csv(const GptTable& gpt);
std::string matrix_csv(const Eigen::MatrixXd& m);

/// Static figure: each boundary component as a gray closed path, the map
/// image as a black closed path.
std::string svg_overlay(const std::vector<std::vector<Complex>>& boundary, const std::vector<Complex>& image,
                        const std::string& title);

/// 17 significant digits, locale independent.
std::string format_double(double v);

void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace gptmap::io
