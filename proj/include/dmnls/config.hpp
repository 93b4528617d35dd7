#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmnls/experiments.hpp"

namespace dmnls {

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool quiet = false;
  std::string groundstate_cache;  // empty = solve fresh every run
  std::vector<ExperimentSpec> experiments;
};

/// Either a validated config or the full list of validation errors.
struct ConfigParseResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value(); }
};

ConfigParseResult parse_config(const std::string& path);
ConfigParseResult parse_config_text(const std::string& json_text);

std::string serialize_config(const RunConfig& config);
std::string serialize_spec(const ExperimentSpec& spec);

/// Map <-> JSON text: {"segments": [[duration, value], ...]} or the
/// two-segment shorthand {"gamma_plus": g+, "gamma_minus": g-, "t_plus": t}.
std::string serialize_map(const DispersionMap& map);
DispersionMap parse_map_text(const std::string& json_text);

}  // namespace dmnls
