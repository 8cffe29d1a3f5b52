#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spsodpp/bench.hpp"

using namespace spsodpp;

namespace {

ScenarioConfig tiny_config(const std::string& extra = "") {
  const std::string text = R"(
name: tiny
n_waypoints: 6
start: [50, 50]
goal: [250, 250]
terrain:
  synth: {seed: 3, extent: 300, hills: 2, max_height: 40, resolution: 31}
threats:
  - {x: 120, y: 140, radius: 20}
  - {x: 200, y: 170, radius: 15}
motion: {radius: 20}
spso: {swarm_size: 12, iterations: 10}
pso: {swarm_size: 12, iterations: 10}
ga: {population: 12, generations: 10}
seeds: [1, 2, 3]
)" + extra;
  return parse_scenario(text);
}

const Method kAll[] = {Method::spso, Method::pso, Method::ga};

}  // namespace

TEST_CASE("seed derivation") {
  for (Method m : kAll) {
    CHECK(scenario_seeds(4, m, 0, MotionMode::shared).motion ==
          scenario_seeds(4, Method::spso, 3, MotionMode::shared).motion);
    CHECK(scenario_seeds(4, m, 0, MotionMode::independent).solver ==
          scenario_seeds(4, m, 0, MotionMode::shared).solver);
  }
  CHECK(scenario_seeds(4, Method::pso, 0, MotionMode::independent).motion !=
        scenario_seeds(4, Method::ga, 0, MotionMode::independent).motion);
  CHECK(scenario_seeds(4, Method::pso, 0, MotionMode::shared).solver !=
        scenario_seeds(4, Method::ga, 0, MotionMode::shared).solver);
  CHECK(scenario_seeds(4, Method::pso, 0, MotionMode::shared).motion !=
        scenario_seeds(5, Method::pso, 0, MotionMode::shared).motion);
}

TEST_CASE("shared motion gives every method the same threat trace") {
  const auto c = tiny_config();
  const auto logs = run_scenario(c, kAll, MotionMode::shared);
  REQUIRE(logs.size() == 3);
  for (std::size_t s = 0; s < c.seeds.size(); ++s) {
    CHECK(logs[0][s].threat_trace == logs[1][s].threat_trace);
    CHECK(logs[0][s].threat_trace == logs[2][s].threat_trace);
    CHECK(logs[0][s].motion_seed == logs[2][s].motion_seed);
  }
  // The threats actually moved.
  CHECK_FALSE(logs[0][0].threat_trace.front() == logs[0][0].threat_trace.back());
}

TEST_CASE("shared traces keep every method's UAV out of the dead-zones") {
  const auto c = tiny_config("uav: {diameter: 1, safety_margin: 10}\n");
  const auto logs = run_scenario(c, kAll, MotionMode::shared);
  for (std::size_t s = 0; s < c.seeds.size(); ++s) {
    const auto& trace = logs[0][s].threat_trace;
    for (std::size_t k = 1; k < trace.size(); ++k)
      for (const auto& method_logs : logs) {
        const Waypoint& uav = method_logs[s].final_path[k];
        for (const auto& t : trace[k])
          CHECK(std::hypot(uav.x - t.center_x, uav.y - t.center_y) > c.uav_diameter + t.radius);
      }
  }
}

TEST_CASE("independent motion draws separate traces per method") {
  const auto c = tiny_config();
  const auto logs = run_scenario(c, kAll, MotionMode::independent);
  CHECK_FALSE(logs[0][0].threat_trace == logs[1][0].threat_trace);
}

TEST_CASE("one log per seed and means recomputable from the logs") {
  const auto c = tiny_config();
  const auto report = run_comparison(c, kAll, MotionMode::independent);
  REQUIRE(report.methods.size() == 3);
  for (const auto& m : report.methods) {
    REQUIRE(m.logs.size() == c.seeds.size());
    REQUIRE(m.mean_costs.size() == c.n_waypoints - 2);
    for (std::size_t k = 0; k < m.mean_costs.size(); ++k) {
      double sum = 0;
      for (const auto& log : m.logs) sum += log.checkpoint_costs[k];
      CHECK(m.mean_costs[k] == doctest::Approx(sum / double(m.logs.size())).epsilon(1e-15));
    }
    for (std::size_t s = 0; s < c.seeds.size(); ++s) CHECK(m.logs[s].seed == c.seeds[s]);
  }
  CHECK(report.config_hash == c.config_hash);
  CHECK(report.scenario == "tiny");
  CHECK(report.motion_radius == 20.0);
}

TEST_CASE("a single-method comparison is that method's table") {
  const auto c = tiny_config();
  const Method one[] = {Method::pso};
  const auto single = run_comparison(c, one, MotionMode::independent);
  const auto all = run_comparison(c, kAll, MotionMode::independent);
  REQUIRE(single.methods.size() == 1);
  CHECK(single.methods[0].mean_costs == all.methods[1].mean_costs);
  CHECK(run_scenario(c, Method::pso, MotionMode::independent).size() == 3);
  CHECK_THROWS_AS(run_comparison(c, std::span<const Method>{}, MotionMode::shared),
                  std::invalid_argument);
}

TEST_CASE("results do not depend on the worker count") {
  auto c = tiny_config();
  const auto a = to_csv(run_comparison(c, kAll, MotionMode::shared));
  const auto b = to_csv(run_comparison(c, kAll, MotionMode::independent));
  c.workers = 3;
  c.spso.workers = c.pso.workers = c.ga.workers = 2;
  CHECK(to_csv(run_comparison(c, kAll, MotionMode::shared)) == a);
  CHECK(to_csv(run_comparison(c, kAll, MotionMode::independent)) == b);
}

TEST_CASE("radius sweep") {
  const auto c = tiny_config();
  const double radii[] = {0, 10, 30};
  const auto reports = run_radius_sweep(c, radii, kAll, MotionMode::shared);
  REQUIRE(reports.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(reports[i].motion_radius == radii[i]);

  auto fixed = c;
  fixed.motion.motion_radius = 0;
  const auto still = run_comparison(fixed, kAll, MotionMode::shared);
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(reports[0].methods[m].mean_costs == still.methods[m].mean_costs);
    for (const auto& log : reports[0].methods[m].logs)
      for (const auto& snapshot : log.threat_trace) CHECK(snapshot == c.threats);
  }
  const double bad[] = {-1};
  CHECK_THROWS_AS(run_radius_sweep(c, bad, kAll, MotionMode::shared), std::invalid_argument);
}

TEST_CASE("CSV layout and roundtrip") {
  const auto report = run_comparison(tiny_config(), kAll, MotionMode::independent);
  const std::string csv = to_csv(report);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# scenario=tiny config_hash=" + report.config_hash, 0) == 0);
  std::getline(in, line);
  CHECK(line == "cost,spso,pso,ga");
  std::getline(in, line);
  CHECK(line.rfind("Cost 1,", 0) == 0);
  CHECK(csv.find(report.timestamp) == std::string::npos);

  const CostTable parsed = parse_csv(csv);
  CHECK(parsed == cost_table(report));
  REQUIRE(parsed.rows.size() == 4);
  for (std::size_t m = 0; m < 3; ++m) {
    std::vector<double> column;
    for (const auto& r : parsed.rows) column.push_back(r[m]);
    CHECK(column == mean_costs(report.methods[m].logs));
  }
}

TEST_CASE("CSV keeps infinities") {
  BenchReport r;
  MethodRuns m;
  m.method = Method::ga;
  m.mean_costs = {kInfinity, 12.5, 0.1 + 0.2};
  r.methods.push_back(m);
  const auto t = parse_csv(to_csv(r));
  CHECK(t.rows[0][0] == kInfinity);
  CHECK(t.rows[2][0] == 0.1 + 0.2);
  CHECK(to_csv(r).find("Cost 1,inf\n") != std::string::npos);
}

TEST_CASE("an empty report is a header-only CSV") {
  BenchReport r;
  r.scenario = "empty";
  const std::string csv = to_csv(r);
  CHECK(csv.find("cost\n") != std::string::npos);
  const auto t = parse_csv(csv);
  CHECK(t.methods.empty());
  CHECK(t.rows.empty());
  CHECK_THROWS_AS(parse_csv("Cost 1,3\n"), std::invalid_argument);
}

TEST_CASE("JSON carries full logs and grows with the seed count") {
  auto c = tiny_config();
  const Method one[] = {Method::spso};
  const auto small = run_comparison(c, one, MotionMode::independent);
  c.seeds = {1, 2, 3, 4, 5, 6};
  const auto big = run_comparison(c, one, MotionMode::independent);

  const auto j = nlohmann::json::parse(to_json(small));
  CHECK(j["config_hash"] == c.config_hash);
  CHECK(j["methods"][0]["method"] == "spso");
  const auto& run = j["methods"][0]["runs"][0];
  CHECK(run["checkpoint_costs"].size() == 4);
  REQUIRE(run["checkpoints"].size() == 4);
  CHECK(run["checkpoints"][0]["threats"].size() == 2);
  CHECK(run["checkpoints"][3]["plan"].size() == 3);
  CHECK(run["final_path"].size() == 6);

  const double ratio = double(to_json(big).size()) / double(to_json(small).size());
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("emit writes atomically named files") {
  const auto dir = std::filesystem::temp_directory_path() / "spsodpp_emit_test";
  std::filesystem::remove_all(dir);
  const auto report = run_comparison(tiny_config(), kAll, MotionMode::shared);
  const Format both[] = {Format::csv, Format::json};
  const auto paths = emit(report, both, dir / "nested", "run");
  REQUIRE(paths.size() == 2);
  for (const auto& p : paths) CHECK(std::filesystem::exists(p));
  std::ifstream in(paths[0]);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == to_csv(report));
  CHECK_FALSE(std::filesystem::exists(dir / "nested" / "run.csv.tmp"));
  std::filesystem::remove_all(dir);
}
