#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spsodpp/bench.hpp"

namespace py = pybind11;
using namespace spsodpp;

namespace {

using Triples = std::vector<SphericalTriple>;

SphericalConfig config_of(const Triples& t) { return SphericalConfig{t}; }

py::object candidate_object(const Candidate& c) {
  if (const auto* s = std::get_if<SphericalConfig>(&c)) return py::cast(s->triples);
  return py::cast(std::get<Path>(c));
}

std::vector<Method> methods_of(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) out.push_back(parse_method(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spherical-vector PSO dynamic path planner with PSO and GA baselines.";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<DemParseError>(m, "DemParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Waypoint>(m, "Waypoint")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def(py::init([](const std::tuple<double, double, double>& t) {
        return Waypoint{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
      }))
      .def_readwrite("x", &Waypoint::x)
      .def_readwrite("y", &Waypoint::y)
      .def_readwrite("z", &Waypoint::z)
      .def("__eq__", [](const Waypoint& a, const Waypoint& b) { return a == b; })
      .def("__iter__", [](const Waypoint& w) {
        return py::iter(py::make_tuple(w.x, w.y, w.z));
      })
      .def("__repr__", [](const Waypoint& w) {
        return "Waypoint(" + std::to_string(w.x) + ", " + std::to_string(w.y) + ", " +
               std::to_string(w.z) + ")";
      });
  py::implicitly_convertible<py::tuple, Waypoint>();

  py::class_<Box>(m, "Box")
      .def(py::init<>())
      .def(py::init<Waypoint, Waypoint>(), py::arg("min"), py::arg("max"))
      .def_readwrite("min", &Box::min)
      .def_readwrite("max", &Box::max)
      .def("contains", &Box::contains);

  py::class_<SphericalTriple>(m, "SphericalTriple")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("rho"), py::arg("elevation"),
           py::arg("azimuth"))
      .def_readwrite("rho", &SphericalTriple::rho)
      .def_readwrite("elevation", &SphericalTriple::elevation)
      .def_readwrite("azimuth", &SphericalTriple::azimuth)
      .def("__eq__", [](const SphericalTriple& a, const SphericalTriple& b) { return a == b; })
      .def("__repr__", [](const SphericalTriple& t) {
        return "SphericalTriple(" + std::to_string(t.rho) + ", " +
               std::to_string(t.elevation) + ", " + std::to_string(t.azimuth) + ")";
      });

  py::class_<RhoBand>(m, "RhoBand")
      .def(py::init<double, double>(), py::arg("min_factor") = 1.0,
           py::arg("max_factor") = 2.0)
      .def_readwrite("min_factor", &RhoBand::min_factor)
      .def_readwrite("max_factor", &RhoBand::max_factor);

  py::class_<PathProblem>(m, "PathProblem")
      .def(py::init<>())
      .def_readwrite("start", &PathProblem::start)
      .def_readwrite("goal", &PathProblem::goal)
      .def_readwrite("n", &PathProblem::n)
      .def_readwrite("bounds", &PathProblem::bounds)
      .def_readwrite("rho_max", &PathProblem::rho_max)
      .def_readwrite("h_min", &PathProblem::h_min)
      .def_readwrite("h_max", &PathProblem::h_max)
      .def_readwrite("rho_band", &PathProblem::rho_band)
      .def("rho_bounds", &PathProblem::rho_bounds)
      .def("validate", &PathProblem::validate);

  m.def("default_rho_max", &default_rho_max, py::arg("start"), py::arg("goal"), py::arg("n"));
  m.def("decode", [](const Triples& t, const PathProblem& p) { return decode(config_of(t), p); },
        py::arg("config"), py::arg("problem"));
  m.def("encode", [](const Path& w) { return encode(w).triples; }, py::arg("waypoints"));
  m.def("clamp_config",
        [](const Triples& t, const PathProblem& p) { return clamp_config(config_of(t), p).triples; },
        py::arg("config"), py::arg("problem"));

  py::class_<TerrainGrid>(m, "TerrainGrid")
      .def(py::init<std::size_t, std::size_t, double, double, double, std::vector<double>>(),
           py::arg("n_cols"), py::arg("n_rows"), py::arg("cell_size"), py::arg("origin_x"),
           py::arg("origin_y"), py::arg("heights"))
      .def_property_readonly("n_cols", &TerrainGrid::n_cols)
      .def_property_readonly("n_rows", &TerrainGrid::n_rows)
      .def_property_readonly("cell_size", &TerrainGrid::cell_size)
      .def_property_readonly("heights", &TerrainGrid::heights)
      .def_property_readonly("max_height", &TerrainGrid::max_height)
      .def("height", &TerrainGrid::height, py::arg("x"), py::arg("y"))
      .def("__eq__", [](const TerrainGrid& a, const TerrainGrid& b) { return a == b; });

  m.def("load_dem", [](const std::string& text) { return load_dem(text); }, py::arg("text"));
  m.def("save_dem", &save_dem, py::arg("grid"));
  m.def("ground_height", &ground_height, py::arg("grid"), py::arg("x"), py::arg("y"));
  m.def("synth_terrain", &synth_terrain, py::arg("seed"), py::arg("extent"), py::arg("n_hills"),
        py::arg("max_height"), py::arg("resolution") = 101);

  py::class_<ThreatCylinder>(m, "ThreatCylinder")
      .def(py::init<double, double, double>(), py::arg("center_x"), py::arg("center_y"),
           py::arg("radius"))
      .def_readwrite("center_x", &ThreatCylinder::center_x)
      .def_readwrite("center_y", &ThreatCylinder::center_y)
      .def_readwrite("radius", &ThreatCylinder::radius)
      .def("__eq__", [](const ThreatCylinder& a, const ThreatCylinder& b) { return a == b; });

  py::class_<Environment>(m, "Environment")
      .def(py::init<TerrainGrid, std::vector<ThreatCylinder>, double, double>(),
           py::arg("terrain"), py::arg("threats") = std::vector<ThreatCylinder>{},
           py::arg("uav_diameter") = 1.0, py::arg("safety_margin") = 0.0)
      .def_readwrite("terrain", &Environment::terrain)
      .def_readwrite("threats", &Environment::threats)
      .def_readwrite("uav_diameter", &Environment::uav_diameter)
      .def_readwrite("safety_margin", &Environment::safety_margin)
      .def("validate", &Environment::validate);

  py::class_<CostWeights>(m, "CostWeights")
      .def(py::init<double, double, double, double, double, double>(), py::arg("b1") = 1.0,
           py::arg("b2") = 5.0, py::arg("b3") = 10.0, py::arg("b4") = 1.0, py::arg("a1") = 1.0,
           py::arg("a2") = 1.0)
      .def_readwrite("b1", &CostWeights::b1)
      .def_readwrite("b2", &CostWeights::b2)
      .def_readwrite("b3", &CostWeights::b3)
      .def_readwrite("b4", &CostWeights::b4)
      .def_readwrite("a1", &CostWeights::a1)
      .def_readwrite("a2", &CostWeights::a2);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("f1", &CostBreakdown::f1)
      .def_readonly("f2", &CostBreakdown::f2)
      .def_readonly("f3", &CostBreakdown::f3)
      .def_readonly("f4", &CostBreakdown::f4)
      .def_readonly("total", &CostBreakdown::total)
      .def_readonly("out_of_bounds", &CostBreakdown::out_of_bounds)
      .def_readonly("out_of_terrain", &CostBreakdown::out_of_terrain)
      .def("feasible", &CostBreakdown::feasible);

  m.def("path_length_cost", &path_length_cost, py::arg("waypoints"));
  m.def("threat_kernel", &threat_kernel, py::arg("d"), py::arg("env"), py::arg("threat"));
  m.def("segment_threat_distance", &segment_threat_distance, py::arg("a"), py::arg("b"),
        py::arg("threat"));
  m.def("threat_cost", &threat_cost, py::arg("waypoints"), py::arg("env"));
  m.def("altitude_cost", &altitude_cost, py::arg("waypoints"), py::arg("env"),
        py::arg("problem"));
  m.def("smoothness_cost", &smoothness_cost, py::arg("waypoints"), py::arg("weights"));
  m.def("evaluate_path", &evaluate_path, py::arg("waypoints"), py::arg("problem"),
        py::arg("env"), py::arg("weights"));
  m.def("total_cost",
        [](const Triples& t, const PathProblem& p, const Environment& e, const CostWeights& w) {
          return total_cost(config_of(t), p, e, w);
        },
        py::arg("config"), py::arg("problem"), py::arg("env"), py::arg("weights"));

  py::enum_<Method>(m, "Method")
      .value("spso", Method::spso)
      .value("pso", Method::pso)
      .value("ga", Method::ga);

  py::class_<SwarmParams>(m, "SwarmParams")
      .def(py::init<>())
      .def_readwrite("swarm_size", &SwarmParams::swarm_size)
      .def_readwrite("iterations", &SwarmParams::iterations)
      .def_readwrite("inertia_start", &SwarmParams::inertia_start)
      .def_readwrite("inertia_end", &SwarmParams::inertia_end)
      .def_readwrite("cognitive_coeff", &SwarmParams::cognitive_coeff)
      .def_readwrite("social_coeff", &SwarmParams::social_coeff)
      .def_readwrite("velocity_limit", &SwarmParams::velocity_limit)
      .def_readwrite("seed", &SwarmParams::seed)
      .def_readwrite("workers", &SwarmParams::workers);

  py::class_<GAParams>(m, "GAParams")
      .def(py::init<>())
      .def_readwrite("population", &GAParams::population)
      .def_readwrite("generations", &GAParams::generations)
      .def_readwrite("crossover_rate", &GAParams::crossover_rate)
      .def_readwrite("mutation_rate", &GAParams::mutation_rate)
      .def_readwrite("tournament_size", &GAParams::tournament_size)
      .def_readwrite("elitism", &GAParams::elitism)
      .def_readwrite("seed", &GAParams::seed)
      .def_readwrite("workers", &GAParams::workers);

  py::class_<SolverResult>(m, "SolverResult")
      .def_property_readonly("best_config",
                             [](const SolverResult& r) { return candidate_object(r.best_config); })
      .def_readonly("best_waypoints", &SolverResult::best_waypoints)
      .def_readonly("best_cost", &SolverResult::best_cost)
      .def_readonly("history", &SolverResult::history);

  // Solvers release the GIL; they only touch their own arguments.
  m.def("spso_solve",
        [](const PathProblem& p, const Environment& e, const CostWeights& w, const SwarmParams& s) {
          return spso_solve(p, e, w, s);
        },
        py::arg("problem"), py::arg("env"), py::arg("weights"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("pso_solve",
        [](const PathProblem& p, const Environment& e, const CostWeights& w, const SwarmParams& s) {
          return pso_solve(p, e, w, s);
        },
        py::arg("problem"), py::arg("env"), py::arg("weights"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("ga_solve",
        [](const PathProblem& p, const Environment& e, const CostWeights& w, const GAParams& g) {
          return ga_solve(p, e, w, g);
        },
        py::arg("problem"), py::arg("env"), py::arg("weights"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ThreatMotionModel>(m, "ThreatMotionModel")
      .def(py::init<double, std::size_t>(), py::arg("motion_radius") = 50.0,
           py::arg("max_rejection_tries") = 100)
      .def_readwrite("motion_radius", &ThreatMotionModel::motion_radius)
      .def_readwrite("max_rejection_tries", &ThreatMotionModel::max_rejection_tries);

  m.def("step_threats",
        [](const Environment& e, const ThreatMotionModel& model, const Waypoint& uav,
           std::uint64_t seed) {
          Rng rng(seed);
          return step_threats(e, model, uav, rng);
        },
        py::arg("env"), py::arg("model"), py::arg("uav_position"), py::arg("seed"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("method", &SolverConfig::method)
      .def_readwrite("swarm", &SolverConfig::swarm)
      .def_readwrite("ga", &SolverConfig::ga)
      .def_readwrite("warm_start", &SolverConfig::warm_start);

  py::class_<MissionLog>(m, "MissionLog")
      .def_readonly("method", &MissionLog::method)
      .def_readonly("seed", &MissionLog::seed)
      .def_readonly("checkpoint_costs", &MissionLog::checkpoint_costs)
      .def_readonly("checkpoint_breakdowns", &MissionLog::checkpoint_breakdowns)
      .def_readonly("threat_trace", &MissionLog::threat_trace)
      .def_readonly("plans", &MissionLog::plans)
      .def_readonly("final_path", &MissionLog::final_path)
      .def_readonly("trapped", &MissionLog::trapped)
      .def_readonly("trapped_at", &MissionLog::trapped_at)
      .def("to_json", [](const MissionLog& l) { return to_json(l); });

  m.def("run_mission",
        [](const PathProblem& p, const Environment& e, const CostWeights& w,
           const ThreatMotionModel& model, const SolverConfig& s, std::uint64_t seed) {
          return run_mission(p, e, w, model, s, seed);
        },
        py::arg("problem"), py::arg("env"), py::arg("weights"), py::arg("model"),
        py::arg("solver"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  py::enum_<MotionMode>(m, "MotionMode")
      .value("shared", MotionMode::shared)
      .value("independent", MotionMode::independent);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("weights", &ScenarioConfig::weights)
      .def_readwrite("threats", &ScenarioConfig::threats)
      .def_readwrite("motion", &ScenarioConfig::motion)
      .def_readwrite("motion_mode", &ScenarioConfig::motion_mode)
      .def_readwrite("spso", &ScenarioConfig::spso)
      .def_readwrite("pso", &ScenarioConfig::pso)
      .def_readwrite("ga", &ScenarioConfig::ga)
      .def_readwrite("seeds", &ScenarioConfig::seeds)
      .def_readwrite("workers", &ScenarioConfig::workers)
      .def_readonly("config_hash", &ScenarioConfig::config_hash);

  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("base_dir") = ".");
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("build_scenario",
        [](const ScenarioConfig& c) {
          Scenario s = build_scenario(c);
          return py::make_tuple(s.problem, s.env);
        },
        py::arg("config"));

  py::class_<MethodRuns>(m, "MethodRuns")
      .def_readonly("method", &MethodRuns::method)
      .def_readonly("logs", &MethodRuns::logs)
      .def_readonly("mean_costs", &MethodRuns::mean_costs);

  py::class_<BenchReport>(m, "BenchReport")
      .def_readonly("scenario", &BenchReport::scenario)
      .def_readonly("config_hash", &BenchReport::config_hash)
      .def_readonly("motion_radius", &BenchReport::motion_radius)
      .def_readonly("methods", &BenchReport::methods)
      .def("any_trapped", &BenchReport::any_trapped)
      .def("to_csv", [](const BenchReport& r) { return to_csv(r); })
      .def("to_json", [](const BenchReport& r) { return to_json(r); });

  m.def("run_comparison",
        [](const ScenarioConfig& c, const std::vector<std::string>& methods,
           std::optional<MotionMode> mode) {
          const auto ms = methods_of(methods);
          py::gil_scoped_release release;
          return run_comparison(c, ms, mode.value_or(c.motion_mode));
        },
        py::arg("config"), py::arg("methods") = std::vector<std::string>{"spso", "pso", "ga"},
        py::arg("mode") = py::none());
}
