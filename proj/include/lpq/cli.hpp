#pragma once

#include "lpq/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lpq {

enum class Command { Ball, Green, Eigen, SweepP, SweepBeta, SpinningTop, FaberKrahn, Verify };

std::string to_string(Command c);

/// Parameter values accepted in the config's `parameters` map.
using ParamValue = std::variant<double, std::vector<double>>;

struct RunConfig {
    Command command = Command::Ball;
    std::optional<DomainSpec> domain;
    std::map<std::string, ParamValue> parameters;
    std::string output_dir = ".";
    bool emit_plots = false;
    std::uint64_t seed = 0;
    int jobs = 1;

    double param(const std::string& key, double fallback) const;
    double require_param(const std::string& key) const;
    std::vector<double> require_list(const std::string& key) const;
    bool has(const std::string& key) const { return parameters.count(key) > 0; }
};

/// Parse and validate a JSON config. Strict: unknown keys are rejected.
/// Malformed JSON throws ParseError (with line/column); violated command
/// preconditions throw ConfigInvalid naming the field.
RunConfig parse_config(const std::string& json_text);

/// Execute the command; write results.json (plus CSVs / SVGs) under
/// output_dir. Returns 0 on success, 1 on computational failure, 2 on a
/// config error. Failures also leave a JSON error record in output_dir.
int run(const RunConfig& config);

} // namespace lpq
