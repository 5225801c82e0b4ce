#pragma once

#include <string>

#include <json.hpp>

#include "amp/simulation.hpp"

namespace amp {

// Merges a JSON document onto an existing config. Objects merge key by key,
// everything else (including arrays) replaces the current value. Unknown keys
// and type mismatches throw std::invalid_argument naming the dotted key path.
void apply_json(SimConfig& config, const nlohmann::json& doc);

// Applies one "key.path=value" override. The value is parsed as JSON when it
// is valid JSON and treated as a plain string otherwise, so `plant=example2`
// and `noise.std=0.25` both work without extra quoting.
void apply_override(SimConfig& config, const std::string& assignment);

// Reads a config file. Throws std::invalid_argument with "config not found"
// for a missing path and a parse diagnostic for malformed JSON.
nlohmann::json load_config_file(const std::string& path);

// Base config for a custom run: the built-in defaults of whichever example
// plant the document names (example1 when absent), before the merge.
SimConfig custom_base(const nlohmann::json& doc);

// Full echo of a resolved config; apply_json(fresh, config_to_json(c))
// reproduces c exactly.
nlohmann::json config_to_json(const SimConfig& config);

}  // namespace amp
