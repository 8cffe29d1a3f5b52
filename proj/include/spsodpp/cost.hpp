#pragma once

#include <limits>
#include <vector>

#include "spsodpp/path_model.hpp"
#include "spsodpp/terrain.hpp"

namespace spsodpp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Vertical cylinder of radius `radius` around (center_x, center_y).
struct ThreatCylinder {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 1.0;

  bool operator==(const ThreatCylinder&) const = default;
};

struct Environment {
  TerrainGrid terrain;
  std::vector<ThreatCylinder> threats;
  double uav_diameter = 1.0;
  double safety_margin = 0.0;

  /// Throws std::invalid_argument on a non-positive radius or diameter, a
  /// negative margin, or two overlapping threats.
  void validate() const;
};

/// True when the two discs overlap or touch.
bool threats_overlap(const ThreatCylinder& a, const ThreatCylinder& b);

struct CostWeights {
  double b1 = 1.0;  // length
  double b2 = 5.0;  // threat
  double b3 = 10.0; // altitude
  double b4 = 1.0;  // smoothness
  double a1 = 1.0;  // turning
  double a2 = 1.0;  // climb

  void validate() const;
};

struct CostBreakdown {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double total = 0.0;
  bool out_of_bounds = false;   // a waypoint left the operational box
  bool out_of_terrain = false;  // a waypoint left the terrain extent

  bool feasible() const { return total < kInfinity; }
};

double path_length_cost(const Path& waypoints);

/// Piecewise threat penalty for a segment at horizontal distance `d` from the
/// threat axis: zero beyond the safety band, linear inside it, infinite in
/// the dead-zone (d <= D + R).
double threat_kernel(double d, const Environment& env, const ThreatCylinder& threat);

/// Minimum horizontal distance between segment [a, b] and the threat axis.
double segment_threat_distance(const Waypoint& a, const Waypoint& b,
                               const ThreatCylinder& threat);

double threat_cost(const Path& waypoints, const Environment& env);

/// Sum of per-waypoint deviations from mid-band height; infinite if any
/// waypoint is outside [h_min, h_max] above ground or outside the terrain.
double altitude_cost(const Path& waypoints, const Environment& env,
                     const PathProblem& problem);

double smoothness_cost(const Path& waypoints, const CostWeights& weights);

/// Weighted sum b.F with infeasibility dominating: any infinite component,
/// or any waypoint outside the operational box, makes the total infinite.
CostBreakdown evaluate_path(const Path& waypoints, const PathProblem& problem,
                            const Environment& env, const CostWeights& weights);

CostBreakdown total_cost(const SphericalConfig& config, const PathProblem& problem,
                         const Environment& env, const CostWeights& weights);

/// b1 f1 + b2 f2 + b3 f3 + b4 f4 with the rule that an infinite component
/// yields an infinite total regardless of its weight.
double combine(const CostBreakdown& parts, const CostWeights& weights);

}  // namespace spsodpp
