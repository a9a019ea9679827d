#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "msj/bounds.hpp"
#include "msj/model.hpp"

namespace msj {

/// {"n": 64, "types": [{"lambda": 4.0, "mu": 0.25, "l": 1}, ...]}
nlohmann::json config_to_json(const SystemConfig& config);
/// Parses and stable-sorts types by need; throws std::invalid_argument on
/// missing fields or an invalid config.
SystemConfig config_from_json(const nlohmann::json& doc);

SystemConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const SystemConfig& config);

nlohmann::json bounds_to_json(const BoundReport& report);
BoundReport bounds_from_json(const nlohmann::json& doc);

}  // namespace msj
