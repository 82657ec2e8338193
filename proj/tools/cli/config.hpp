// Flat key=value experiment configuration.
//
//   # comment
//   n = 5
//   alpha = 1
//   beta = 1.2
//   b = 1
//   p_U = 0.95
//   h = 0.8333333333333334        # optional, defaults to 1/beta
//   horizon = 600                 # optional
//   replications = 10000          # optional, 1 = single trajectory
//   seed = 1                      # optional
//   initial_state = uniform_budget | minimizer | explicit
//   initial_vector = 0.2, 0.2, 0.2, 0.2, 0.2   # required when explicit
//   function_family = quadratic | logcosh_quadratic
//
// Without a preset, n, alpha, beta, b and p_U are required.
#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "openrcd/opensim.hpp"

namespace openrcd::cli {

using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Throws ConfigError (key "line N") on malformed lines or duplicate keys.
KeyValues parse_key_values(std::istream& in);

/// Applies entries on top of base. When require_core is set, every core key
/// must be present. Throws ConfigError naming the offending key; the result
/// is validated.
ExperimentConfig apply_entries(const KeyValues& entries, ExperimentConfig base,
                               bool require_core);

/// "fig1" or nullopt.
std::optional<ExperimentConfig> preset_config(std::string_view name);

/// Reads and validates a config file, optionally layered over a preset.
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::optional<ExperimentConfig>& preset);

}  // namespace openrcd::cli
