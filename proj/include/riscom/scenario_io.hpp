#pragma once

#include <filesystem>
#include <string>

#include "riscom/scenario.hpp"

namespace riscom {

/// Scenario files are JSON objects keyed by ScenarioConfig field names.
/// Values use the file units: P_max in dBm, gamma_th in mW, sigma2 as a
/// noise PSD in dBm/MHz (multiplied by B on load), beta0 and
/// direct_blockage in dB, positions as [x, y, z] in metres. Missing keys
/// keep the value from `base`; unknown keys are rejected. Throws InvalidConfig.
ScenarioConfig scenario_from_json(const std::string& text, const ScenarioConfig& base);
ScenarioConfig scenario_from_json(const std::string& text);

/// Throws IoError / InvalidConfig.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Inverse of scenario_from_json (round-trips to within float formatting).
std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace riscom
