#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mos/baseflow.hpp"
#include "mos/bounds.hpp"
#include "mos/eigensolve.hpp"
#include "mos/params.hpp"

namespace mos::cli {

/// Invalid or incomplete run configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

/// Uniform range [min, max] with `count` points (count = 1 gives min only).
struct Range {
    double min = 0;
    double max = 0;
    int count = 0;
    std::vector<double> values() const;
};

struct RegionSpec {
    Range rq1;
    bool with_spectrum = false;
};

/// Fully resolved run configuration.
struct RunConfig {
    std::string profile_name;
    std::vector<double> u_coeffs;  // empty when a built-in profile is named
    std::vector<double> w_coeffs;
    std::optional<MicropolarParams> params;
    std::optional<double> classical_reynolds;
    std::vector<double> alphas;
    std::optional<Range> alpha_range;  // present when the alphas came from a range
    int n = 100;
    FilterCutoffs cutoffs;
    BoundsOptions bounds;
    std::optional<RegionSpec> region;
    bool with_spectrum = false;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;  // empty: standard output

    BaseFlow flow() const;
    /// The parameters passed to the bounds checks; the classical limit when classical.
    MicropolarParams effective_params() const;
    /// Resolved configuration echoed into every output.
    nlohmann::json to_json() const;
};

/// Builds a RunConfig from parsed JSON. Throws ConfigError on any invalid field.
RunConfig parse_config(const nlohmann::json& j);

/// Reads and parses a JSON file. Throws ConfigError when unreadable or malformed.
nlohmann::json read_json_file(const std::string& path);

CertificatePolicy parse_policy(const std::string& s);
OutputFormat parse_format(const std::string& s);

}  // namespace mos::cli
