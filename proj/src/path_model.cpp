#include "spsodpp/path_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spsodpp {

namespace {
constexpr double kPi = std::numbers::pi;

bool finite(const Waypoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}
}  // namespace

Waypoint Box::clamp(const Waypoint& p) const {
  return {std::clamp(p.x, min.x, max.x), std::clamp(p.y, min.y, max.y),
          std::clamp(p.z, min.z, max.z)};
}

double distance(const Waypoint& a, const Waypoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void PathProblem::validate() const {
  if (n < 3) throw std::invalid_argument("problem: n must be at least 3");
  if (!finite(start) || !finite(goal))
    throw std::invalid_argument("problem: start and goal must be finite");
  if (!(bounds.min.x <= bounds.max.x && bounds.min.y <= bounds.max.y &&
        bounds.min.z <= bounds.max.z))
    throw std::invalid_argument("problem: bounds min exceeds max");
  if (!bounds.contains(start))
    throw std::invalid_argument("problem: start outside operational bounds");
  if (!bounds.contains(goal))
    throw std::invalid_argument("problem: goal outside operational bounds");
  if (!(h_min > 0.0 && h_min < h_max))
    throw std::invalid_argument("problem: need 0 < h_min < h_max");
  if (!(rho_max > 0.0) || !std::isfinite(rho_max))
    throw std::invalid_argument("problem: rho_max must be positive");
  if (rho_band && !(rho_band->min_factor >= 0.0 &&
                    rho_band->min_factor <= rho_band->max_factor &&
                    rho_band->max_factor > 0.0 && std::isfinite(rho_band->max_factor)))
    throw std::invalid_argument("problem: rho band needs 0 <= min <= max, max > 0");
}

std::pair<double, double> PathProblem::rho_bounds() const {
  if (!rho_band) return {0.0, rho_max};
  const double step = distance(start, goal) / double(n - 1);
  return {rho_band->min_factor * step, rho_band->max_factor * step};
}

double default_rho_max(const Waypoint& start, const Waypoint& goal,
                       std::size_t n) {
  if (n < 3) throw std::invalid_argument("default_rho_max: n must be at least 3");
  return 4.0 * distance(start, goal) / double(n - 2);
}

double wrap_angle(double a) {
  if (a > -kPi && a <= kPi) return a;
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  double w = r - kPi;
  if (w <= -kPi) w = kPi;
  return w;
}

Path decode(const SphericalConfig& config, const PathProblem& problem) {
  if (problem.n < 3 || config.size() != problem.n - 2)
    throw std::invalid_argument("decode: config has " +
                                std::to_string(config.size()) +
                                " triples, problem needs " +
                                std::to_string(problem.n < 2 ? 0 : problem.n - 2));
  Path out;
  out.reserve(problem.n);
  out.push_back(problem.start);
  Waypoint p = problem.start;
  for (const auto& t : config.triples) {
    const double horizontal = t.rho * std::cos(t.elevation);
    p.x += horizontal * std::cos(t.azimuth);
    p.y += horizontal * std::sin(t.azimuth);
    p.z += t.rho * std::sin(t.elevation);
    out.push_back(p);
  }
  out.push_back(problem.goal);
  return out;
}

SphericalConfig encode(const Path& waypoints) {
  SphericalConfig config;
  if (waypoints.size() < 3) return config;
  config.triples.reserve(waypoints.size() - 2);
  for (std::size_t i = 0; i + 2 < waypoints.size(); ++i) {
    const Waypoint& a = waypoints[i];
    const Waypoint& b = waypoints[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    SphericalTriple t;
    t.rho = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (t.rho > 0.0) {
      t.elevation = std::atan2(dz, std::hypot(dx, dy));
      t.azimuth = (dx == 0.0 && dy == 0.0) ? 0.0 : wrap_angle(std::atan2(dy, dx));
    }
    config.triples.push_back(t);
  }
  return config;
}

SphericalConfig clamp_config(SphericalConfig config, const PathProblem& problem) {
  const auto [rho_lo, rho_hi] = problem.rho_bounds();
  for (auto& t : config.triples) {
    t.rho = std::clamp(t.rho, rho_lo, rho_hi);
    t.elevation = std::clamp(t.elevation, -kPi / 2.0, kPi / 2.0);
    t.azimuth = wrap_angle(t.azimuth);
  }
  return config;
}

}  // namespace spsodpp
