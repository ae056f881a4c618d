#pragma once

#include "gptmap/io.hpp"
#include "gptmap/report.hpp"

#include <filesystem>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace gptmap::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kComputationError = 1,
    kConfigError = 2,
    kValidationFailure = 3,
};

struct RunConfig {
    std::string command;
    std::string shape = "ellipse:2,1";
    int nodes = 3072;
    double k = 0.0;
    int order = 0;                       // 0: chosen per command
    std::vector<int> truncations{1, 2, 3, 4, 5, 6};
    std::filesystem::path out = ".";
    std::set<std::string> formats;       // empty: every format the command supports
    int modes = 64;
    int spectral_nodes = 1024;
    bool dump_matrices = false;

    int max_truncation() const;
    /// GPT order after applying the per-command default.
    int resolved_order() const;
    bool wants(const std::string& format) const { return formats.empty() || formats.count(format) > 0; }
};

/// Thrown for invalid flags, config files or values (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help and --version; what() is the text to print.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses argv (including an optional --config key=value file; flags win
/// over file values) and validates the result.
RunConfig parse_args(int argc, const char* const* argv);

/// Checks ranges and that the shape parses and samples; throws ConfigError.
void validate_config(const RunConfig& config);

/// Every resolved setting, echoed into each output.
io::Json provenance(const RunConfig& config);

int cmd_gpt(const RunConfig& config, std::ostream& log);
int cmd_map(const RunConfig& config, std::ostream& log);
int cmd_validate(const RunConfig& config, std::ostream& log);
int cmd_eigs(const RunConfig& config, std::ostream& log);

/// The invariant suite behind `validate`.
ValidationReport validation_suite(const RunConfig& config);

/// Entry point: parse, dispatch, map failures onto exit codes.
int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

} // namespace gptmap::cli
