#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spsodpp/cost.hpp"
#include "spsodpp/dynamics.hpp"
#include "spsodpp/path_model.hpp"
#include "spsodpp/solvers.hpp"
#include "spsodpp/terrain.hpp"

namespace spsodpp {

/// Threat motion shared by every method for a given seed, or drawn
/// independently per method and run.
enum class MotionMode { shared, independent };

std::string_view to_string(MotionMode m);
MotionMode parse_motion_mode(std::string_view name);

/// Invalid scenario file. `field()` is a dotted path such as
/// "threats[2].radius", empty when the error is not tied to a field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct TerrainSource {
  std::optional<std::filesystem::path> file;  // resolved against the config dir
  std::uint64_t seed = 7;
  double extent = 1000.0;
  std::size_t hills = 6;
  double max_height = 120.0;
  std::size_t resolution = 101;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::string description;
  CostWeights weights;
  std::size_t n_waypoints = 10;
  double start_x = 0.0, start_y = 0.0;
  double goal_x = 0.0, goal_y = 0.0;
  double h_min = 100.0;
  double h_max = 200.0;
  std::optional<double> rho_max;
  /// [min, max] multiples of the remaining even step; see RhoBand.
  std::optional<RhoBand> rho_band;
  std::optional<double> ceiling;  // top of the operational box
  double uav_diameter = 1.0;
  double safety_margin = 10.0;
  std::vector<ThreatCylinder> threats;
  ThreatMotionModel motion;
  MotionMode motion_mode = MotionMode::independent;
  TerrainSource terrain;
  SwarmParams spso;
  SwarmParams pso;
  GAParams ga;
  bool warm_start = true;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t workers = 1;

  /// FNV-1a of the file text the config was parsed from.
  std::string config_hash;
};

/// Parses YAML scenario text; relative terrain paths resolve against
/// `base_dir`. Every value is validated; errors carry the field path.
ScenarioConfig parse_scenario(const std::string& text,
                              const std::filesystem::path& base_dir = ".");
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Concrete problem and initial environment described by a config.
struct Scenario {
  PathProblem problem;
  Environment env;
};

Scenario build_scenario(const ScenarioConfig& config);

SolverConfig solver_config(const ScenarioConfig& config, Method method);

}  // namespace spsodpp
