// JSON (de)serialisation of ScenarioConfig. Keys mirror the field names;
// BS consumption parameters live under "power_model".
#pragma once

#include <filesystem>

#include <json.hpp>

#include "coe/config.hpp"

namespace coe {

/// Overlays the keys present in `j` onto `base`. Unknown keys and type or
/// range errors raise ConfigError naming the field.
ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig base = {});
nlohmann::json config_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_config(const std::filesystem::path& path);

/// FNV-1a of the compact JSON dump; stable across runs and platforms.
std::uint64_t config_hash(const ScenarioConfig& cfg);

}  // namespace coe
