#include "spsodpp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "spsodpp/parallel.hpp"

namespace spsodpp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kJitterFraction = 0.25;
constexpr double kMutationSigmaFraction = 0.05;

double& axis(Waypoint& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); }
double axis(const Waypoint& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); }

double box_size(const Box& b, int k) {
  return k == 0 ? b.size_x() : (k == 1 ? b.size_y() : b.size_z());
}

double& component(SphericalTriple& t, int k) {
  return k == 0 ? t.rho : (k == 1 ? t.elevation : t.azimuth);
}
double component(const SphericalTriple& t, int k) {
  return k == 0 ? t.rho : (k == 1 ? t.elevation : t.azimuth);
}

double limit_velocity(double v, double range, double fraction) {
  if (fraction <= 0.0) return v;
  const double vmax = fraction * range;
  return std::clamp(v, -vmax, vmax);
}

Path with_endpoints(const Path& interior, const PathProblem& problem) {
  Path out;
  out.reserve(interior.size() + 2);
  out.push_back(problem.start);
  out.insert(out.end(), interior.begin(), interior.end());
  out.push_back(problem.goal);
  return out;
}

void check_inputs(const PathProblem& problem, const Environment& env,
                  const CostWeights& weights) {
  problem.validate();
  env.validate();
  weights.validate();
}

std::vector<Candidate> seeded_population(const PathProblem& problem,
                                         std::size_t count, Encoding mode,
                                         const SolveOptions& options, Rng& rng) {
  auto population = init_population(problem, count, mode, rng);
  std::size_t slot = population.size() > 1 ? 1 : 0;
  for (const auto& c : options.injected) {
    if (slot >= population.size()) break;
    const bool spherical = std::holds_alternative<SphericalConfig>(c);
    if (spherical != (mode == Encoding::spherical))
      throw std::invalid_argument("injected candidate encoding does not match solver");
    if (spherical ? std::get<SphericalConfig>(c).size() != problem.n - 2
                  : std::get<Path>(c).size() != problem.n - 2)
      throw std::invalid_argument("injected candidate has the wrong length");
    population[slot++] = c;
  }
  return population;
}

template <class Position>
std::vector<Position> unwrap(std::vector<Candidate> population) {
  std::vector<Position> out;
  out.reserve(population.size());
  for (auto& c : population) out.push_back(std::get<Position>(std::move(c)));
  return out;
}

template <class Position>
std::vector<CostBreakdown> evaluate_all(WorkPool& pool,
                                        const std::vector<Position>& positions,
                                        const PathProblem& problem,
                                        const Environment& env,
                                        const CostWeights& weights) {
  std::vector<CostBreakdown> costs(positions.size());
  pool.parallel_for(positions.size(), [&](std::size_t i) {
    costs[i] = evaluate_path(candidate_path(Candidate(positions[i]), problem),
                             problem, env, weights);
  });
  return costs;
}

SphericalVelocity zero_velocity(const SphericalConfig& c) {
  return SphericalVelocity{std::vector<SphericalTriple>(c.size())};
}
Path zero_velocity(const Path& p) { return Path(p.size()); }

void update(SphericalConfig& x, SphericalVelocity& v, const SphericalConfig& pb,
            const SphericalConfig& gb, double w, const SwarmParams& params,
            const PathProblem& problem, Rng& rng) {
  spso_update_particle(x, v, pb, gb, w, params, problem, rng);
}
void update(Path& x, Path& v, const Path& pb, const Path& gb, double w,
            const SwarmParams& params, const PathProblem& problem, Rng& rng) {
  pso_update_particle(x, v, pb, gb, w, params, problem, rng);
}

/// Shared swarm loop. All random draws happen here, sequentially in particle
/// order; only the fitness evaluation fans out to the pool.
template <class Position>
SolverResult swarm_solve(const PathProblem& problem, const Environment& env,
                         const CostWeights& weights, const SwarmParams& params,
                         const SolveOptions& options, Encoding mode) {
  check_inputs(problem, env, weights);
  params.validate();
  Rng rng(params.seed);
  WorkPool pool(params.workers);

  auto positions = unwrap<Position>(
      seeded_population(problem, params.swarm_size, mode, options, rng));
  std::vector<decltype(zero_velocity(positions[0]))> velocities;
  velocities.reserve(positions.size());
  for (const auto& p : positions) velocities.push_back(zero_velocity(p));

  auto costs = evaluate_all(pool, positions, problem, env, weights);
  auto personal_best = positions;
  auto personal_cost = costs;
  std::size_t g = 0;
  for (std::size_t i = 1; i < costs.size(); ++i)
    if (costs[i].total < costs[g].total) g = i;
  Position global_best = positions[g];
  CostBreakdown global_cost = costs[g];

  SolverResult result;
  result.history.reserve(params.iterations);
  for (std::size_t t = 0; t < params.iterations; ++t) {
    const double w = params.inertia(t);
    for (std::size_t i = 0; i < positions.size(); ++i)
      update(positions[i], velocities[i], personal_best[i], global_best, w,
             params, problem, rng);
    costs = evaluate_all(pool, positions, problem, env, weights);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (costs[i].total < personal_cost[i].total) {
        personal_best[i] = positions[i];
        personal_cost[i] = costs[i];
      }
      if (costs[i].total < global_cost.total) {
        global_best = positions[i];
        global_cost = costs[i];
      }
    }
    result.history.push_back(global_cost.total);
  }
  result.best_config = global_best;
  result.best_waypoints = candidate_path(result.best_config, problem);
  result.best_cost = global_cost;
  return result;
}

struct Ranked {
  double cost;
  std::size_t index;
};

std::size_t tournament(const std::vector<CostBreakdown>& costs, std::size_t size,
                       Rng& rng) {
  std::size_t best = rng.index(costs.size());
  for (std::size_t k = 1; k < size; ++k) {
    const std::size_t c = rng.index(costs.size());
    if (costs[c].total < costs[best].total ||
        (costs[c].total == costs[best].total && c < best))
      best = c;
  }
  return best;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::spso: return "spso";
    case Method::pso: return "pso";
    case Method::ga: return "ga";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "spso") return Method::spso;
  if (name == "pso") return Method::pso;
  if (name == "ga") return Method::ga;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected spso, pso or ga)");
}

Path candidate_path(const Candidate& c, const PathProblem& problem) {
  if (const auto* s = std::get_if<SphericalConfig>(&c)) return decode(*s, problem);
  const auto& interior = std::get<Path>(c);
  if (interior.size() != problem.n - 2)
    throw std::invalid_argument("candidate has " + std::to_string(interior.size()) +
                                " interior waypoints, problem needs " +
                                std::to_string(problem.n - 2));
  return with_endpoints(interior, problem);
}

void SwarmParams::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("swarm: swarm_size must be >= 2");
  if (iterations < 1) throw std::invalid_argument("swarm: iterations must be >= 1");
  for (double w : {inertia_start, inertia_end})
    if (!(w > 0.0 && w < 1.5))
      throw std::invalid_argument("swarm: inertia must lie in (0, 1.5)");
  if (!(cognitive_coeff >= 0.0) || !(social_coeff >= 0.0))
    throw std::invalid_argument("swarm: coefficients must be >= 0");
}

double SwarmParams::inertia(std::size_t t) const {
  if (iterations <= 1) return inertia_start;
  const double f = double(t) / double(iterations - 1);
  return inertia_start + (inertia_end - inertia_start) * f;
}

void GAParams::validate() const {
  if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
  if (generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
  for (double r : {crossover_rate, mutation_rate})
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("ga: rates must lie in [0, 1]");
  if (tournament_size < 1) throw std::invalid_argument("ga: tournament_size must be >= 1");
  if (elitism >= population) throw std::invalid_argument("ga: elitism must be < population");
}

Path straight_interior(const PathProblem& problem) {
  Path interior;
  interior.reserve(problem.n - 2);
  const double steps = double(problem.n - 1);
  for (std::size_t i = 1; i + 1 < problem.n; ++i) {
    const double f = double(i) / steps;
    interior.push_back({problem.start.x + (problem.goal.x - problem.start.x) * f,
                        problem.start.y + (problem.goal.y - problem.start.y) * f,
                        problem.start.z + (problem.goal.z - problem.start.z) * f});
  }
  return interior;
}

namespace {

/// Chains from the start towards each target with the step length clamped to
/// the magnitude bounds. With a zero lower bound every step ends between two
/// points of the box, so the decoded chain stays inside it.
SphericalConfig chain_towards(const Path& targets, const PathProblem& problem) {
  const auto [rho_lo, rho_hi] = problem.rho_bounds();
  SphericalConfig config;
  config.triples.reserve(targets.size());
  Waypoint at = problem.start;
  for (const auto& target : targets) {
    SphericalTriple capped = encode(Path{at, target, problem.goal}).triples.front();
    capped.rho = std::clamp(capped.rho, rho_lo, rho_hi);
    const PathProblem hop{at, problem.goal, 3, problem.bounds, problem.rho_max,
                          problem.h_min, problem.h_max, std::nullopt};
    Waypoint next = decode(SphericalConfig{{capped}}, hop)[1];
    // A target on a box face can decode a rounding error outside it.
    for (int shrink = 0; shrink < 8 && !problem.bounds.contains(next) &&
                         capped.rho * (1.0 - 1e-9) >= rho_lo;
         ++shrink) {
      capped.rho *= 1.0 - 1e-9;
      next = decode(SphericalConfig{{capped}}, hop)[1];
    }
    config.triples.push_back(capped);
    at = next;
  }
  return config;
}

}  // namespace

std::vector<Candidate> init_population(const PathProblem& problem,
                                       std::size_t count, Encoding mode, Rng& rng) {
  std::vector<Candidate> population;
  if (count == 0) return population;
  population.reserve(count);
  const Path straight = straight_interior(problem);
  auto emit = [&](const Path& interior) {
    if (mode == Encoding::cartesian)
      population.emplace_back(interior);
    else
      population.emplace_back(chain_towards(interior, problem));
  };
  emit(straight);
  for (std::size_t m = 1; m < count; ++m) {
    Path jittered = straight;
    for (auto& p : jittered) {
      for (int k = 0; k < 3; ++k) {
        const double span = kJitterFraction * box_size(problem.bounds, k);
        axis(p, k) += rng.uniform(-span, span);
      }
      p = problem.bounds.clamp(p);
    }
    emit(jittered);
  }
  return population;
}

std::optional<Candidate> warm_start(const Path& previous_suffix,
                                    const PathProblem& reduced_problem,
                                    Encoding mode) {
  if (previous_suffix.size() != reduced_problem.n) {
    std::cerr << "warning: warm start skipped, previous suffix has "
              << previous_suffix.size() << " waypoints but the reduced problem needs "
              << reduced_problem.n << "\n";
    return std::nullopt;
  }
  if (mode == Encoding::spherical)
    return Candidate(encode(previous_suffix));
  return Candidate(Path(previous_suffix.begin() + 1, previous_suffix.end() - 1));
}

void spso_update_particle(SphericalConfig& position, SphericalVelocity& velocity,
                          const SphericalConfig& personal_best,
                          const SphericalConfig& global_best, double inertia,
                          const SwarmParams& params, const PathProblem& problem,
                          Rng& rng) {
  const auto [rho_lo, rho_hi] = problem.rho_bounds();
  const double ranges[3] = {rho_hi - rho_lo, kPi, 2.0 * kPi};
  for (std::size_t j = 0; j < position.size(); ++j) {
    auto& x = position.triples[j];
    auto& v = velocity.triples[j];
    for (int k = 0; k < 3; ++k) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      double to_personal = component(personal_best.triples[j], k) - component(x, k);
      double to_global = component(global_best.triples[j], k) - component(x, k);
      if (k == 2) {
        to_personal = wrap_angle(to_personal);
        to_global = wrap_angle(to_global);
      }
      double next = inertia * component(v, k) +
                    params.cognitive_coeff * r1 * to_personal +
                    params.social_coeff * r2 * to_global;
      next = limit_velocity(next, ranges[k], params.velocity_limit);
      const double moved = component(x, k) + next;
      // Bounded components reflect their velocity at the wall; azimuth wraps.
      if (k == 0 && (moved < rho_lo || moved > rho_hi)) next = -next;
      if (k == 1 && std::abs(moved) > kPi / 2.0) next = -next;
      component(v, k) = next;
      component(x, k) = moved;
    }
  }
  position = clamp_config(std::move(position), problem);
}

void pso_update_particle(Path& position, Path& velocity, const Path& personal_best,
                         const Path& global_best, double inertia,
                         const SwarmParams& params, const PathProblem& problem,
                         Rng& rng) {
  for (std::size_t j = 0; j < position.size(); ++j) {
    for (int k = 0; k < 3; ++k) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double x = axis(position[j], k);
      double next = inertia * axis(velocity[j], k) +
                    params.cognitive_coeff * r1 * (axis(personal_best[j], k) - x) +
                    params.social_coeff * r2 * (axis(global_best[j], k) - x);
      next = limit_velocity(next, box_size(problem.bounds, k), params.velocity_limit);
      const double moved = x + next;
      if (moved < axis(problem.bounds.min, k) || moved > axis(problem.bounds.max, k))
        next = -next;
      axis(velocity[j], k) = next;
      axis(position[j], k) = moved;
    }
    position[j] = problem.bounds.clamp(position[j]);
  }
}

Path uniform_crossover(const Path& a, const Path& b, Rng& rng) {
  if (a.size() != b.size())
    throw std::invalid_argument("crossover parents differ in length");
  Path child = a;
  for (std::size_t j = 0; j < child.size(); ++j)
    for (int k = 0; k < 3; ++k)
      if (rng.uniform() < 0.5) axis(child[j], k) = axis(b[j], k);
  return child;
}

void gaussian_mutation(Path& genome, double rate, const PathProblem& problem,
                       Rng& rng) {
  for (auto& p : genome) {
    for (int k = 0; k < 3; ++k)
      if (rng.uniform() < rate)
        axis(p, k) += kMutationSigmaFraction * box_size(problem.bounds, k) * rng.normal();
    p = problem.bounds.clamp(p);
  }
}

SolverResult spso_solve(const PathProblem& problem, const Environment& env,
                        const CostWeights& weights, const SwarmParams& params,
                        const SolveOptions& options) {
  return swarm_solve<SphericalConfig>(problem, env, weights, params, options,
                                      Encoding::spherical);
}

SolverResult pso_solve(const PathProblem& problem, const Environment& env,
                       const CostWeights& weights, const SwarmParams& params,
                       const SolveOptions& options) {
  return swarm_solve<Path>(problem, env, weights, params, options,
                           Encoding::cartesian);
}

SolverResult ga_solve(const PathProblem& problem, const Environment& env,
                      const CostWeights& weights, const GAParams& params,
                      const SolveOptions& options) {
  check_inputs(problem, env, weights);
  params.validate();
  Rng rng(params.seed);
  WorkPool pool(params.workers);

  auto population = unwrap<Path>(
      seeded_population(problem, params.population, Encoding::cartesian, options, rng));
  auto costs = evaluate_all(pool, population, problem, env, weights);
  std::size_t b = 0;
  for (std::size_t i = 1; i < costs.size(); ++i)
    if (costs[i].total < costs[b].total) b = i;
  Path best = population[b];
  CostBreakdown best_cost = costs[b];

  SolverResult result;
  result.history.reserve(params.generations);
  std::vector<Ranked> ranked(population.size());
  for (std::size_t gen = 0; gen < params.generations; ++gen) {
    for (std::size_t i = 0; i < population.size(); ++i) ranked[i] = {costs[i].total, i};
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& l, const Ranked& r) {
      return l.cost < r.cost || (l.cost == r.cost && l.index < r.index);
    });

    std::vector<Path> next;
    std::vector<CostBreakdown> next_costs;
    next.reserve(population.size());
    next_costs.reserve(population.size());
    for (std::size_t e = 0; e < params.elitism; ++e) {
      next.push_back(population[ranked[e].index]);
      next_costs.push_back(costs[ranked[e].index]);
    }
    const std::size_t elite_count = next.size();
    while (next.size() < population.size()) {
      const auto& a = population[tournament(costs, params.tournament_size, rng)];
      const auto& p2 = population[tournament(costs, params.tournament_size, rng)];
      Path child = rng.uniform() < params.crossover_rate ? uniform_crossover(a, p2, rng) : a;
      gaussian_mutation(child, params.mutation_rate, problem, rng);
      next.push_back(std::move(child));
    }
    std::vector<Path> children(next.begin() + elite_count, next.end());
    auto child_costs = evaluate_all(pool, children, problem, env, weights);
    next_costs.insert(next_costs.end(), child_costs.begin(), child_costs.end());

    population = std::move(next);
    costs = std::move(next_costs);
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (costs[i].total < best_cost.total) {
        best = population[i];
        best_cost = costs[i];
      }
    }
    result.history.push_back(best_cost.total);
  }
  result.best_config = best;
  result.best_waypoints = candidate_path(result.best_config, problem);
  result.best_cost = best_cost;
  return result;
}

}  // namespace spsodpp
