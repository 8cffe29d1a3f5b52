#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace spsodpp {

/// A point of the flight path; z is absolute altitude.
struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Waypoint&) const = default;
};

using Path = std::vector<Waypoint>;

/// Axis-aligned operational box.
struct Box {
  Waypoint min;
  Waypoint max;

  bool contains(const Waypoint& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  Waypoint clamp(const Waypoint& p) const;
  double size_x() const { return max.x - min.x; }
  double size_y() const { return max.y - min.y; }
  double size_z() const { return max.z - min.z; }
};

double distance(const Waypoint& a, const Waypoint& b);

/// One chained displacement: magnitude, elevation above the horizontal
/// plane, and azimuth measured from +x in the horizontal plane.
struct SphericalTriple {
  double rho = 0.0;
  double elevation = 0.0;
  double azimuth = 0.0;

  bool operator==(const SphericalTriple&) const = default;
};

struct SphericalConfig {
  std::vector<SphericalTriple> triples;

  std::size_t size() const { return triples.size(); }
  bool operator==(const SphericalConfig&) const = default;
};

/// Per-component increments, same layout as SphericalConfig.
struct SphericalVelocity {
  std::vector<SphericalTriple> triples;

  std::size_t size() const { return triples.size(); }
  bool operator==(const SphericalVelocity&) const = default;
};

/// Magnitude bounds expressed as multiples of the even step
/// |goal - start| / (n - 1); recomputed for every (sub)problem.
struct RhoBand {
  double min_factor = 1.0;
  double max_factor = 2.0;

  bool operator==(const RhoBand&) const = default;
};

struct PathProblem {
  Waypoint start;
  Waypoint goal;
  std::size_t n = 10;  // waypoint count including start and goal
  Box bounds;
  double rho_max = 0.0;
  double h_min = 0.0;  // above ground
  double h_max = 0.0;
  /// When set, replaces [0, rho_max] as the magnitude interval.
  std::optional<RhoBand> rho_band;

  std::size_t interior_count() const { return n - 2; }

  /// Magnitude interval used by clamp_config.
  std::pair<double, double> rho_bounds() const;

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

/// Straight start-goal distance over N, times 4.
double default_rho_max(const Waypoint& start, const Waypoint& goal,
                       std::size_t n);

/// Wraps an angle into (-pi, pi]. Values already in range are returned as is.
double wrap_angle(double a);

/// start, then N chained displacements, then the goal.
Path decode(const SphericalConfig& config, const PathProblem& problem);

/// Inverse of decode for the first N segments of `waypoints` (n points,
/// goal last). Zero-length segments encode as an all-zero triple.
SphericalConfig encode(const Path& waypoints);

/// rho clamps to rho_bounds(), elevation to [-pi/2, pi/2]; azimuth wraps.
SphericalConfig clamp_config(SphericalConfig config, const PathProblem& problem);

}  // namespace spsodpp
