#include "spsodpp/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spsodpp {

void Environment::validate() const {
  if (!(uav_diameter > 0.0))
    throw std::invalid_argument("environment: uav_diameter must be positive");
  if (!(safety_margin >= 0.0))
    throw std::invalid_argument("environment: safety_margin must be non-negative");
  for (std::size_t i = 0; i < threats.size(); ++i) {
    if (!(threats[i].radius > 0.0))
      throw std::invalid_argument("environment: threat " + std::to_string(i) +
                                  " radius must be positive");
    for (std::size_t j = i + 1; j < threats.size(); ++j)
      if (threats_overlap(threats[i], threats[j]))
        throw std::invalid_argument("environment: threats " + std::to_string(i) +
                                    " and " + std::to_string(j) + " overlap");
  }
}

bool threats_overlap(const ThreatCylinder& a, const ThreatCylinder& b) {
  return std::hypot(a.center_x - b.center_x, a.center_y - b.center_y) <=
         a.radius + b.radius;
}

void CostWeights::validate() const {
  for (double w : {b1, b2, b3, b4, a1, a2})
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("weights: all coefficients must be finite and >= 0");
  if (b1 == 0.0 && b2 == 0.0 && b3 == 0.0 && b4 == 0.0)
    throw std::invalid_argument("weights: b1..b4 must not all be zero");
}

double path_length_cost(const Path& waypoints) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    sum += distance(waypoints[i], waypoints[i + 1]);
  return sum;
}

double threat_kernel(double d, const Environment& env, const ThreatCylinder& threat) {
  const double dead = env.uav_diameter + threat.radius;
  const double outer = env.safety_margin + dead;
  if (d > outer) return 0.0;
  if (d > dead) return outer - d;
  return kInfinity;
}

double segment_threat_distance(const Waypoint& a, const Waypoint& b,
                               const ThreatCylinder& threat) {
  const double sx = b.x - a.x;
  const double sy = b.y - a.y;
  const double px = threat.center_x - a.x;
  const double py = threat.center_y - a.y;
  const double len2 = sx * sx + sy * sy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((px * sx + py * sy) / len2, 0.0, 1.0);
  return std::hypot(px - t * sx, py - t * sy);
}

double threat_cost(const Path& waypoints, const Environment& env) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    for (const auto& threat : env.threats) {
      const double d = segment_threat_distance(waypoints[i], waypoints[i + 1], threat);
      sum += threat_kernel(d, env, threat);
      if (sum == kInfinity) return kInfinity;
    }
  }
  return sum;
}

namespace {

struct AltitudeResult {
  double value = 0.0;
  bool out_of_terrain = false;
};

AltitudeResult altitude_terms(const Path& waypoints, const Environment& env,
                              const PathProblem& problem) {
  AltitudeResult r;
  const double mid = 0.5 * (problem.h_max + problem.h_min);
  for (const auto& p : waypoints) {
    const auto ground = env.terrain.try_height(p.x, p.y);
    if (!ground) {
      r.out_of_terrain = true;
      r.value = kInfinity;
      return r;
    }
    const double h = p.z - *ground;
    if (h < problem.h_min || h > problem.h_max) {
      r.value = kInfinity;
      return r;
    }
    r.value += std::abs(h - mid);
  }
  return r;
}

}  // namespace

double altitude_cost(const Path& waypoints, const Environment& env,
                     const PathProblem& problem) {
  return altitude_terms(waypoints, env, problem).value;
}

double smoothness_cost(const Path& waypoints, const CostWeights& weights) {
  const std::size_t n = waypoints.size();
  if (n < 2) return 0.0;
  double turning = 0.0;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double ux = waypoints[i + 1].x - waypoints[i].x;
    const double uy = waypoints[i + 1].y - waypoints[i].y;
    const double vx = waypoints[i + 2].x - waypoints[i + 1].x;
    const double vy = waypoints[i + 2].y - waypoints[i + 1].y;
    if ((ux == 0.0 && uy == 0.0) || (vx == 0.0 && vy == 0.0)) continue;
    turning += std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
  }
  double climb = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double horizontal = std::hypot(waypoints[i + 1].x - waypoints[i].x,
                                         waypoints[i + 1].y - waypoints[i].y);
    const double psi = std::atan2(waypoints[i + 1].z - waypoints[i].z, horizontal);
    if (i > 0) climb += std::abs(psi - prev);
    prev = psi;
  }
  return weights.a1 * turning + weights.a2 * climb;
}

double combine(const CostBreakdown& parts, const CostWeights& weights) {
  const double f[] = {parts.f1, parts.f2, parts.f3, parts.f4};
  const double b[] = {weights.b1, weights.b2, weights.b3, weights.b4};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (f[k] == kInfinity) return kInfinity;
    total += b[k] * f[k];
  }
  return total;
}

CostBreakdown evaluate_path(const Path& waypoints, const PathProblem& problem,
                            const Environment& env, const CostWeights& weights) {
  CostBreakdown out;
  out.f1 = path_length_cost(waypoints);
  out.f2 = threat_cost(waypoints, env);
  const auto altitude = altitude_terms(waypoints, env, problem);
  out.f3 = altitude.value;
  out.out_of_terrain = altitude.out_of_terrain;
  out.f4 = smoothness_cost(waypoints, weights);
  out.out_of_bounds = !std::all_of(waypoints.begin(), waypoints.end(),
                                   [&](const Waypoint& p) {
                                     return problem.bounds.contains(p);
                                   });
  out.total = out.out_of_bounds ? kInfinity : combine(out, weights);
  return out;
}

CostBreakdown total_cost(const SphericalConfig& config, const PathProblem& problem,
                         const Environment& env, const CostWeights& weights) {
  return evaluate_path(decode(config, problem), problem, env, weights);
}

}  // namespace spsodpp
