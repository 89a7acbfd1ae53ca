#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "irsdoa/harness.hpp"
#include "irsdoa/scene.hpp"

namespace irsdoa {

/// Scene file contents: physical scene plus the measurement schedule.
struct SceneFile {
  SceneConfig scene;
  MeasurementSpec measurement;
};

/// Parses a scene object. Angles in degrees, powers in dBm, RCS in dBsm,
/// distances in meters, frequency in GHz. Missing keys keep the desk-scale
/// defaults; irs_arrival_angle_deg defaults to bs_departure_angle_deg.
/// Unknown keys and invalid values raise ConfigError.
SceneFile parse_scene(const nlohmann::json& j);
SceneFile load_scene(const std::filesystem::path& path);

/// Inverse of parse_scene.
nlohmann::json scene_to_json(const SceneFile& file);

/// Parses a sweep spec: axis, points, trials, master_seed, estimators,
/// base_scene (scene object, including measurement), anm, music,
/// element_budget, noiseless.
SweepSpec parse_sweep(const nlohmann::json& j);
SweepSpec load_sweep(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace irsdoa
