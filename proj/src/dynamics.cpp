#include "spsodpp/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spsodpp {

void ThreatMotionModel::validate() const {
  if (!(motion_radius >= 0.0) || !std::isfinite(motion_radius))
    throw std::invalid_argument("motion: radius must be finite and >= 0");
  if (max_rejection_tries < 1)
    throw std::invalid_argument("motion: max_rejection_tries must be >= 1");
}

Environment step_threats(const Environment& env, const ThreatMotionModel& model,
                         std::span<const Waypoint> uav_positions, Rng& rng) {
  Environment out = env;
  auto& threats = out.threats;
  for (std::size_t i = 0; i < threats.size(); ++i) {
    const ThreatCylinder current = threats[i];
    const double dead_zone = env.uav_diameter + current.radius;
    for (std::size_t attempt = 0; attempt < model.max_rejection_tries; ++attempt) {
      // sqrt of a uniform radius fraction gives a uniform density on the disc.
      const double r = model.motion_radius * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      ThreatCylinder moved = current;
      moved.center_x += r * std::cos(theta);
      moved.center_y += r * std::sin(theta);

      bool ok = true;
      for (std::size_t j = 0; j < threats.size() && ok; ++j)
        if (j != i && threats_overlap(moved, threats[j])) ok = false;
      for (const auto& uav : uav_positions)
        if (ok && std::hypot(uav.x - moved.center_x, uav.y - moved.center_y) <= dead_zone)
          ok = false;
      if (ok) {
        threats[i] = moved;
        break;
      }
    }
  }
  return out;
}

Environment step_threats(const Environment& env, const ThreatMotionModel& model,
                         const Waypoint& uav_position, Rng& rng) {
  return step_threats(env, model, std::span<const Waypoint>(&uav_position, 1), rng);
}

MissionState initial_state(const PathProblem& problem, Environment env) {
  Path suffix = {problem.start};
  for (const auto& p : straight_interior(problem)) suffix.push_back(p);
  suffix.push_back(problem.goal);
  return MissionState{{problem.start}, std::move(suffix), 0, std::move(env), {}, false};
}

PathProblem reduced_problem(const PathProblem& problem, const Waypoint& current,
                            std::size_t checkpoint_index) {
  if (checkpoint_index + 2 > problem.n)
    throw std::invalid_argument("reduced_problem: checkpoint beyond the goal");
  PathProblem r = problem;
  r.start = current;
  r.n = problem.n - checkpoint_index;
  return r;
}

MissionState replan(const MissionState& state, const PathProblem& problem,
                    const CostWeights& weights, const SolverConfig& solver,
                    std::uint64_t solver_seed) {
  const std::size_t k = state.checkpoint_index;
  const std::size_t limit = replannable_limit(problem);
  if (k > limit) throw std::invalid_argument("replan: mission already finished");
  MissionState next = state;

  if (k == limit) {
    // Only the final segment remains and it has a unique solution.
    next.committed.push_back(problem.goal);
    next.planned_suffix = {problem.goal};
    next.checkpoint_index = k + 1;
    return next;
  }

  const PathProblem sub = reduced_problem(problem, state.committed.back(), k);
  const Encoding mode = encoding_of(solver.method);
  SolveOptions options;
  if (solver.warm_start) {
    if (auto seeded = warm_start(state.planned_suffix, sub, mode))
      options.injected.push_back(std::move(*seeded));
  }

  const std::uint64_t seed = derive_seed({solver_seed, k});
  SolverResult result;
  switch (solver.method) {
    case Method::spso: {
      SwarmParams p = solver.swarm;
      p.seed = seed;
      result = spso_solve(sub, state.env, weights, p, options);
      break;
    }
    case Method::pso: {
      SwarmParams p = solver.swarm;
      p.seed = seed;
      result = pso_solve(sub, state.env, weights, p, options);
      break;
    }
    case Method::ga: {
      GAParams p = solver.ga;
      p.seed = seed;
      result = ga_solve(sub, state.env, weights, p, options);
      break;
    }
  }

  next.last_cost = result.best_cost;
  next.trapped = state.trapped || !result.best_cost.feasible();
  next.committed.push_back(result.best_waypoints[1]);
  next.planned_suffix.assign(result.best_waypoints.begin() + 1,
                             result.best_waypoints.end());
  next.checkpoint_index = k + 1;
  return next;
}

MissionRunner::MissionRunner(PathProblem problem, Environment env0,
                             CostWeights weights, SolverConfig solver,
                             std::uint64_t solver_seed)
    : problem_(std::move(problem)),
      weights_(weights),
      solver_(std::move(solver)),
      solver_seed_(solver_seed),
      state_(initial_state(problem_, std::move(env0))) {
  problem_.validate();
  state_.env.validate();
  weights_.validate();
  log_.method = solver_.method;
  log_.solver_seed = solver_seed;
}

bool MissionRunner::planning_done() const {
  return state_.checkpoint_index >= replannable_limit(problem_);
}

void MissionRunner::plan_and_advance() {
  if (planning_done()) throw std::logic_error("plan_and_advance: no checkpoints left");
  const std::size_t k = state_.checkpoint_index;
  log_.threat_trace.push_back(state_.env.threats);
  state_ = replan(state_, problem_, weights_, solver_, solver_seed_);

  Path plan = {state_.committed[state_.committed.size() - 2]};
  plan.insert(plan.end(), state_.planned_suffix.begin(), state_.planned_suffix.end());
  log_.plans.push_back(std::move(plan));
  log_.checkpoint_costs.push_back(state_.last_cost.total);
  log_.checkpoint_breakdowns.push_back(state_.last_cost);
  if (!state_.last_cost.feasible() && !log_.trapped_at) log_.trapped_at = k;
  log_.trapped = state_.trapped;
}

void MissionRunner::set_threats(std::vector<ThreatCylinder> threats) {
  state_.env.threats = std::move(threats);
}

void MissionRunner::finish() {
  while (!planning_done()) plan_and_advance();
  if (finished_) return;
  state_ = replan(state_, problem_, weights_, solver_, solver_seed_);
  log_.final_path = state_.committed;
  finished_ = true;
}

MissionSeeds mission_seeds(std::uint64_t seed) {
  return {derive_seed({seed, 0x6d6f74696f6eULL}), derive_seed({seed, 0x736f6c766572ULL})};
}

MissionLog run_mission(const PathProblem& problem, const Environment& env0,
                       const CostWeights& weights, const ThreatMotionModel& model,
                       const SolverConfig& solver, std::uint64_t seed) {
  MissionLog log = run_mission(problem, env0, weights, model, solver, mission_seeds(seed));
  log.seed = seed;
  return log;
}

MissionLog run_mission(const PathProblem& problem, const Environment& env0,
                       const CostWeights& weights, const ThreatMotionModel& model,
                       const SolverConfig& solver, const MissionSeeds& seeds) {
  model.validate();
  MissionRunner runner(problem, env0, weights, solver, seeds.solver);
  Rng motion(seeds.motion);
  while (!runner.planning_done()) {
    runner.plan_and_advance();
    if (!runner.planning_done()) {
      const auto env = step_threats(runner.state().env, model, runner.position(), motion);
      runner.set_threats(env.threats);
    }
  }
  runner.finish();
  MissionLog log = runner.log();
  log.motion_seed = seeds.motion;
  return log;
}

}  // namespace spsodpp
