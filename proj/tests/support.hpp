#pragma once

#include <vector>

#include "spsodpp/cost.hpp"
#include "spsodpp/path_model.hpp"
#include "spsodpp/terrain.hpp"

namespace testing {

using namespace spsodpp;

inline TerrainGrid flat_terrain(double extent, double height = 0.0,
                                std::size_t nodes = 11) {
  return TerrainGrid(nodes, nodes, extent / double(nodes - 1), 0.0, 0.0,
                     std::vector<double>(nodes * nodes, height));
}

inline Environment flat_env(double extent, std::vector<ThreatCylinder> threats = {},
                            double diameter = 1.0, double margin = 10.0) {
  return Environment{flat_terrain(extent), std::move(threats), diameter, margin};
}

/// Level flight at mid-band over flat ground at height 0.
inline PathProblem flat_problem(double extent, Waypoint start_xy, Waypoint goal_xy,
                                std::size_t n = 10) {
  PathProblem p;
  p.n = n;
  p.h_min = 100.0;
  p.h_max = 200.0;
  p.start = {start_xy.x, start_xy.y, 150.0};
  p.goal = {goal_xy.x, goal_xy.y, 150.0};
  p.bounds = {{0.0, 0.0, 0.0}, {extent, extent, 400.0}};
  p.rho_max = default_rho_max(p.start, p.goal, n);
  return p;
}

inline CostWeights length_only() {
  CostWeights w;
  w.b1 = 1.0;
  w.b2 = w.b3 = w.b4 = 0.0;
  return w;
}

}  // namespace testing
