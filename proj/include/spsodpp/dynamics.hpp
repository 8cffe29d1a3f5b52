#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spsodpp/cost.hpp"
#include "spsodpp/path_model.hpp"
#include "spsodpp/rng.hpp"
#include "spsodpp/solvers.hpp"

namespace spsodpp {

struct ThreatMotionModel {
  double motion_radius = 50.0;
  std::size_t max_rejection_tries = 100;

  void validate() const;
};

/// Which optimizer replans, with its budget. The seeds inside `swarm`/`ga`
/// are overwritten per checkpoint from the mission's solver seed.
struct SolverConfig {
  Method method = Method::spso;
  SwarmParams swarm;
  GAParams ga;
  bool warm_start = true;
};

struct MissionState {
  /// Waypoints already flown or fixed; the last entry is the UAV position.
  Path committed;
  /// Current plan from the UAV position to the goal.
  Path planned_suffix;
  std::size_t checkpoint_index = 0;
  Environment env;
  /// Cost of the plan produced by the latest replan.
  CostBreakdown last_cost;
  bool trapped = false;
};

struct MissionLog {
  Method method = Method::spso;
  std::uint64_t seed = 0;
  std::uint64_t motion_seed = 0;
  std::uint64_t solver_seed = 0;
  /// Total cost of the replanned remaining path at each checkpoint.
  std::vector<double> checkpoint_costs;
  std::vector<CostBreakdown> checkpoint_breakdowns;
  /// Threat positions used for each replan.
  std::vector<std::vector<ThreatCylinder>> threat_trace;
  /// Full plan (UAV position to goal) chosen at each checkpoint.
  std::vector<Path> plans;
  Path final_path;
  bool trapped = false;
  std::optional<std::size_t> trapped_at;  // first checkpoint with no finite plan
};

/// Moves each threat, in index order, to a uniform point of the disc of
/// radius motion_radius around its current center. A sample is accepted when
/// it overlaps no other threat and every UAV position stays outside the
/// moved threat's dead-zone; a threat that exhausts its tries stays put.
Environment step_threats(const Environment& env, const ThreatMotionModel& model,
                         std::span<const Waypoint> uav_positions, Rng& rng);

Environment step_threats(const Environment& env, const ThreatMotionModel& model,
                         const Waypoint& uav_position, Rng& rng);

/// Initial mission state: nothing flown yet, straight-line plan.
MissionState initial_state(const PathProblem& problem, Environment env);

/// Problem from the current waypoint to the goal with n - checkpoint_index
/// waypoints. Magnitude bounds, box and altitude band are inherited; a
/// rho band rescales with the shorter remaining distance.
PathProblem reduced_problem(const PathProblem& problem, const Waypoint& current,
                            std::size_t checkpoint_index);

/// Index at which only the final, fully determined segment remains.
inline std::size_t replannable_limit(const PathProblem& problem) {
  return problem.n - 2;
}

/// Replans the remaining path and commits its first segment. At the
/// replannable limit no solver runs and the remaining segment is committed.
MissionState replan(const MissionState& state, const PathProblem& problem,
                    const CostWeights& weights, const SolverConfig& solver,
                    std::uint64_t solver_seed);

/// Step-wise mission driver. `run_mission` wraps it; benchmark code drives
/// several runners in lockstep when threat motion is shared.
class MissionRunner {
 public:
  MissionRunner(PathProblem problem, Environment env0, CostWeights weights,
                SolverConfig solver, std::uint64_t solver_seed);

  /// True once every replannable checkpoint has been planned.
  bool planning_done() const;
  /// True once the goal has been committed.
  bool finished() const { return finished_; }

  const Waypoint& position() const { return state_.committed.back(); }
  const MissionState& state() const { return state_; }

  /// Plans at the current checkpoint, logs the cost, advances the UAV.
  void plan_and_advance();
  void set_threats(std::vector<ThreatCylinder> threats);
  /// Commits the final segment.
  void finish();

  MissionLog log() const { return log_; }

 private:
  PathProblem problem_;
  CostWeights weights_;
  SolverConfig solver_;
  std::uint64_t solver_seed_;
  MissionState state_;
  MissionLog log_;
  bool finished_ = false;
};

struct MissionSeeds {
  std::uint64_t motion = 0;
  std::uint64_t solver = 0;
};

/// Derives independent motion and solver streams from one seed.
MissionSeeds mission_seeds(std::uint64_t seed);

MissionLog run_mission(const PathProblem& problem, const Environment& env0,
                       const CostWeights& weights, const ThreatMotionModel& model,
                       const SolverConfig& solver, std::uint64_t seed);

MissionLog run_mission(const PathProblem& problem, const Environment& env0,
                       const CostWeights& weights, const ThreatMotionModel& model,
                       const SolverConfig& solver, const MissionSeeds& seeds);

}  // namespace spsodpp
