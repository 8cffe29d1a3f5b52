#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spsodpp/cost.hpp"
#include "spsodpp/path_model.hpp"
#include "spsodpp/rng.hpp"

namespace spsodpp {

enum class Method { spso, pso, ga };

std::string_view to_string(Method m);
/// Accepts "spso", "pso", "ga"; throws std::invalid_argument otherwise.
Method parse_method(std::string_view name);

/// How a solver encodes its candidates.
enum class Encoding { spherical, cartesian };

inline Encoding encoding_of(Method m) {
  return m == Method::spso ? Encoding::spherical : Encoding::cartesian;
}

/// A spherical configuration (SPSO) or the N interior waypoints (PSO, GA).
using Candidate = std::variant<SphericalConfig, Path>;

/// Full n-waypoint path of a candidate.
Path candidate_path(const Candidate& c, const PathProblem& problem);

struct SwarmParams {
  std::size_t swarm_size = 200;
  std::size_t iterations = 200;
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double cognitive_coeff = 1.5;
  double social_coeff = 1.5;
  /// Per-component velocity bound as a fraction of that component's range;
  /// non-positive disables the bound.
  double velocity_limit = 0.2;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  void validate() const;
  /// Inertia for iteration `t` of `iterations`, linear from start to end.
  double inertia(std::size_t t) const;
};

struct GAParams {
  std::size_t population = 100;
  std::size_t generations = 150;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::size_t tournament_size = 3;
  std::size_t elitism = 2;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  void validate() const;
};

struct SolverResult {
  Candidate best_config;
  Path best_waypoints;
  CostBreakdown best_cost;
  /// All-time best total after each iteration/generation.
  std::vector<double> history;
};

/// Straight start-goal line with interior waypoints at even fractions,
/// followed by `count - 1` jittered copies (uniform noise up to 25% of each
/// box dimension, clamped to the box). Spherical candidates are built by
/// chaining towards the jittered points with rho clamped to the problem's
/// magnitude bounds; without a lower bound every decoded waypoint stays
/// inside the box.
std::vector<Candidate> init_population(const PathProblem& problem,
                                       std::size_t count, Encoding mode, Rng& rng);

/// Straight-line interior waypoints.
Path straight_interior(const PathProblem& problem);

/// Encodes a previously planned path as a candidate for `reduced_problem`.
/// Returns std::nullopt (and logs a warning) when the waypoint count does not
/// match the reduced problem.
std::optional<Candidate> warm_start(const Path& previous_suffix,
                                    const PathProblem& reduced_problem,
                                    Encoding mode);

/// Injected candidates replace population members starting at index 1, so
/// the unjittered straight line at index 0 is kept.
struct SolveOptions {
  std::vector<Candidate> injected;
};

/// One canonical PSO update in spherical space. Azimuth differences and the
/// resulting azimuth are wrapped into (-pi, pi]; the position is clamped.
void spso_update_particle(SphericalConfig& position, SphericalVelocity& velocity,
                          const SphericalConfig& personal_best,
                          const SphericalConfig& global_best, double inertia,
                          const SwarmParams& params, const PathProblem& problem,
                          Rng& rng);

/// Cartesian counterpart of spso_update_particle; `position` holds the
/// interior waypoints and is clamped to the operational box.
void pso_update_particle(Path& position, Path& velocity, const Path& personal_best,
                         const Path& global_best, double inertia,
                         const SwarmParams& params, const PathProblem& problem,
                         Rng& rng);

/// Per-coordinate coin flip between the two parents.
Path uniform_crossover(const Path& a, const Path& b, Rng& rng);

/// Gaussian mutation with sigma = 5% of each box dimension, clamped to the box.
void gaussian_mutation(Path& genome, double rate, const PathProblem& problem,
                       Rng& rng);

SolverResult spso_solve(const PathProblem& problem, const Environment& env,
                        const CostWeights& weights, const SwarmParams& params,
                        const SolveOptions& options = {});

SolverResult pso_solve(const PathProblem& problem, const Environment& env,
                       const CostWeights& weights, const SwarmParams& params,
                       const SolveOptions& options = {});

SolverResult ga_solve(const PathProblem& problem, const Environment& env,
                      const CostWeights& weights, const GAParams& params,
                      const SolveOptions& options = {});

}  // namespace spsodpp
