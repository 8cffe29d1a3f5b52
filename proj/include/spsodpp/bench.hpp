#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spsodpp/dynamics.hpp"
#include "spsodpp/scenario.hpp"

namespace spsodpp {

inline constexpr std::string_view kVersion = "0.1.0";

struct MethodRuns {
  Method method = Method::spso;
  std::vector<MissionLog> logs;
  /// Mean of Cost k over the logs, one entry per checkpoint.
  std::vector<double> mean_costs;
};

struct BenchReport {
  std::string scenario;
  std::string config_hash;
  std::string timestamp;  // JSON only; never written to CSV
  std::string version = std::string(kVersion);
  MotionMode motion_mode = MotionMode::independent;
  double motion_radius = 0.0;
  std::vector<MethodRuns> methods;

  bool any_trapped() const;
};

/// Arithmetic mean per checkpoint; infinite if any contributing cost is.
std::vector<double> mean_costs(std::span<const MissionLog> logs);

/// Motion and solver seeds of run `run_index` (seed `seed`) for `method`.
/// Shared mode ignores the method and run index for the motion stream.
MissionSeeds scenario_seeds(std::uint64_t seed, Method method, std::size_t run_index,
                            MotionMode mode);

/// One mission per config seed for each method, returned in `methods` order.
/// In shared mode the missions of one seed run in lockstep on a single
/// threat trajectory that keeps every method's UAV outside the dead-zones,
/// so threat traces are identical across methods.
std::vector<std::vector<MissionLog>> run_scenario(const ScenarioConfig& config,
                                                  std::span<const Method> methods,
                                                  MotionMode mode);

std::vector<MissionLog> run_scenario(const ScenarioConfig& config, Method method,
                                     MotionMode mode);

BenchReport run_comparison(const ScenarioConfig& config,
                           std::span<const Method> methods, MotionMode mode);

/// One report per radius, with the motion radius overridden.
std::vector<BenchReport> run_radius_sweep(const ScenarioConfig& config,
                                          std::span<const double> radii,
                                          std::span<const Method> methods,
                                          MotionMode mode);

/// Cost table as written to CSV: rows are Cost 1..Cost K, columns methods.
struct CostTable {
  std::string config_hash;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> rows;

  bool operator==(const CostTable&) const = default;
};

CostTable cost_table(const BenchReport& report);

std::string to_csv(const BenchReport& report);
CostTable parse_csv(const std::string& text);
std::string to_json(const BenchReport& report);
std::string to_json(const MissionLog& log);

/// Writes `content` to `path` via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

enum class Format { csv, json };

/// Writes `<stem>.csv` and/or `<stem>.json` into `dir`; returns the paths.
std::vector<std::filesystem::path> emit(const BenchReport& report,
                                        std::span<const Format> formats,
                                        const std::filesystem::path& dir,
                                        const std::string& stem);

}  // namespace spsodpp
