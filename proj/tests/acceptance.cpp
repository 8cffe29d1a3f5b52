// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and thresholds are fixed here, not tuned.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spsodpp/bench.hpp"
#include "support.hpp"

using namespace spsodpp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool rel_equal(double got, double want, double tol = 1e-12) {
  if (std::isinf(want)) return got == want;
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

const fs::path kConfigs = SPSODPP_CONFIG_DIR;
const Method kAll[] = {Method::spso, Method::pso, Method::ga};

ScenarioConfig base_case() { return load_scenario(kConfigs / "case1.cfg"); }

/// "pso 3/10" style count of missions that found no finite-cost plan.
std::string trapped_counts(const BenchReport& r) {
  std::string out = "trapped runs:";
  for (const auto& m : r.methods) {
    int n = 0;
    for (const auto& log : m.logs) n += log.trapped;
    out += " " + std::string(to_string(m.method)) + " " + std::to_string(n) + "/" +
           std::to_string(m.logs.size());
  }
  return out;
}

bool non_increasing(const std::vector<double>& c) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!(c[i] <= c[i - 1])) return false;
  return true;
}

Outcome kernels() {
  Outcome o;
  const auto env = testing::flat_env(1000.0, {}, 1.0, 3.0);
  const ThreatCylinder t{0, 0, 2};
  const std::pair<double, double> kernel[] = {{7.0, 0.0}, {2.5, kInfinity}, {4.5, 1.5}};
  for (auto [d, want] : kernel)
    if (!rel_equal(threat_kernel(d, env, t), want)) {
      o.pass = false;
      o.detail += "kernel(" + fmt(d) + ")=" + fmt(threat_kernel(d, env, t)) + " ";
    }

  const auto flat = testing::flat_env(1000.0);
  const auto p = testing::flat_problem(1000.0, {100, 100, 0}, {900, 900, 0}, 3);
  const std::pair<double, double> altitude[] = {
      {150, 0.0}, {120, 30.0}, {100, 50.0}, {200, 50.0}, {250, kInfinity}, {99.5, kInfinity}};
  for (auto [z, want] : altitude) {
    const double got = altitude_cost({{500, 500, z}}, flat, p);
    if (!rel_equal(got, want)) {
      o.pass = false;
      o.detail += "altitude(z=" + fmt(z) + ")=" + fmt(got) + " ";
    }
  }

  Rng rng(1);
  const CostWeights w{};
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
    Path line;
    double along = 0;
    for (int k = 0; k < 6; ++k) {
      along += rng.uniform(1, 100);
      line.push_back({along * std::cos(a), along * std::sin(a), 150});
    }
    const double s = smoothness_cost(line, w);
    if (std::abs(s) > 1e-12) {
      o.pass = false;
      o.detail += "smoothness=" + fmt(s) + " ";
    }
  }
  if (o.pass) o.detail = "3 kernel branches, 6 altitude cases, 100 straight level paths";
  return o;
}

Outcome roundtrip() {
  Rng rng(20240601);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng.index(10);
    Path w;
    for (std::size_t i = 0; i < n; ++i)
      w.push_back({rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(0, 400)});
    PathProblem p;
    p.start = w.front();
    p.goal = w.back();
    p.n = n;
    const Path back = decode(encode(w), p);
    for (std::size_t i = 1; i + 1 < n; ++i)
      worst = std::max({worst, std::abs(back[i].x - w[i].x), std::abs(back[i].y - w[i].y),
                        std::abs(back[i].z - w[i].z)});
  }
  return {worst < 1e-9, "max interior error " + fmt(worst) + " m over 1000 paths"};
}

/// Dense sampling of the segment, refined around the closest sample.
double sampled_distance(const Waypoint& a, const Waypoint& b, const ThreatCylinder& t) {
  auto at = [&](double s) {
    return std::hypot(a.x + s * (b.x - a.x) - t.center_x, a.y + s * (b.y - a.y) - t.center_y);
  };
  double lo = 0.0, hi = 1.0, best = kInfinity;
  for (int level = 0; level < 8 && hi - lo > 1e-15; ++level) {
    const int samples = 10001;
    double best_s = lo;
    for (int i = 0; i < samples; ++i) {
      const double s = lo + (hi - lo) * double(i) / double(samples - 1);
      const double d = at(s);
      if (d < best) {
        best = d;
        best_s = s;
      }
    }
    const double h = (hi - lo) / double(samples - 1);
    lo = std::max(0.0, best_s - h);
    hi = std::min(1.0, best_s + h);
  }
  return best;
}

Outcome oracle() {
  Rng rng(99);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Waypoint a{rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(0, 300)};
    Waypoint b{rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(0, 300)};
    if (i % 100 == 0) b = {a.x, a.y, b.z};  // degenerate projections too
    const ThreatCylinder t{rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(10, 80)};
    worst = std::max(worst, std::abs(segment_threat_distance(a, b, t) - sampled_distance(a, b, t)));
  }
  return {worst <= 1e-6, "max deviation " + fmt(worst) + " m over 1000 pairs"};
}

Outcome convex() {
  const auto cfg = base_case();
  const auto env = testing::flat_env(1000.0);
  const auto problem = testing::flat_problem(1000.0, {100, 100, 0}, {900, 900, 0}, 10);
  const auto w = testing::length_only();
  const double optimum = distance(problem.start, problem.goal);
  Outcome o;
  double worst[3] = {0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SwarmParams s = cfg.spso;
    s.seed = seed;
    SwarmParams p = cfg.pso;
    p.seed = seed;
    GAParams g = cfg.ga;
    g.seed = seed;
    const double got[3] = {spso_solve(problem, env, w, s).best_cost.total / optimum,
                           pso_solve(problem, env, w, p).best_cost.total / optimum,
                           ga_solve(problem, env, w, g).best_cost.total / optimum};
    const double limit[3] = {1.02, 1.05, 1.05};
    for (int m = 0; m < 3; ++m) {
      worst[m] = std::max(worst[m], got[m]);
      if (!(got[m] <= limit[m])) o.pass = false;
    }
  }
  o.detail = "worst ratio to straight line: spso " + fmt(worst[0]) + " (<=1.02), pso " +
             fmt(worst[1]) + ", ga " + fmt(worst[2]) + " (<=1.05)";
  return o;
}

struct BaseRun {
  BenchReport report;
  bool done = false;
};

BaseRun& base_run() {
  static BaseRun run;
  if (!run.done) {
    run.report = run_comparison(base_case(), kAll, MotionMode::independent);
    run.done = true;
  }
  return run;
}

Outcome dominance() {
  const auto& r = base_run().report;
  const auto& spso = r.methods[0].mean_costs;
  Outcome o;
  for (std::size_t row : {std::size_t(0), spso.size() - 1}) {
    for (std::size_t m = 1; m < 3; ++m) {
      const double other = r.methods[m].mean_costs[row];
      const bool ok = spso[row] < other && spso[row] <= 0.8 * other;
      o.pass = o.pass && ok;
      o.detail += "Cost " + std::to_string(row + 1) + " spso " + fmt(spso[row]) + " vs " +
                  std::string(to_string(r.methods[m].method)) + " " + fmt(other) +
                  (ok ? "" : " [short]") + "; ";
    }
  }
  o.detail += trapped_counts(r);
  return o;
}

Outcome monotone() {
  const auto& logs = base_run().report.methods[0].logs;
  int dynamic = 0;
  for (const auto& log : logs) dynamic += non_increasing(log.checkpoint_costs);

  auto cfg = base_case();
  cfg.motion.motion_radius = 0.0;
  int still = 0;
  for (const auto& log : run_scenario(cfg, Method::spso, MotionMode::independent))
    still += non_increasing(log.checkpoint_costs);
  return {dynamic >= 8 && still == 10, "moving threats " + std::to_string(dynamic) +
                                           "/10 (need 8), static " + std::to_string(still) +
                                           "/10 (need 10)"};
}

std::string audit(const MethodRuns& runs, double radius, const Environment& env) {
  for (const auto& log : runs.logs) {
    const auto& trace = log.threat_trace;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      for (std::size_t i = 0; i < trace[k].size(); ++i) {
        const auto& t = trace[k][i];
        for (std::size_t j = i + 1; j < trace[k].size(); ++j)
          if (threats_overlap(t, trace[k][j])) return "overlap";
        if (k > 0) {
          const auto& prev = trace[k - 1][i];
          if (std::hypot(t.center_x - prev.center_x, t.center_y - prev.center_y) >
              radius + 1e-9)
            return "displacement above radius";
          // A capture is a step that leaves the UAV inside a dead-zone it was
          // not already in. A mission that flew an infeasible plan into a
          // threat is trapped, not captured.
          const Waypoint& uav = log.final_path[k];
          const double zone = env.uav_diameter + t.radius;
          const bool inside = std::hypot(uav.x - t.center_x, uav.y - t.center_y) <= zone;
          const bool was_inside = std::hypot(uav.x - prev.center_x, uav.y - prev.center_y) <= zone;
          const bool moved = !(t == prev);
          if (inside && (moved || !was_inside)) return "UAV captured by a moving threat";
        }
      }
    }
  }
  return {};
}

Outcome sweep() {
  const auto cfg = base_case();
  const Scenario sc = build_scenario(cfg);
  const double radii[] = {50, 100, 200};
  Outcome o;
  for (const auto& report : run_radius_sweep(cfg, radii, kAll, MotionMode::independent)) {
    const double s = report.methods[0].mean_costs.front();
    const double p = report.methods[1].mean_costs.front();
    const double g = report.methods[2].mean_costs.front();
    const bool wins = s < p && s < g;
    std::string broken;
    for (const auto& m : report.methods) {
      broken = audit(m, report.motion_radius, sc.env);
      if (!broken.empty()) break;
    }
    o.pass = o.pass && wins && broken.empty();
    o.detail += "R=" + fmt(report.motion_radius) + " Cost 1 spso " + fmt(s) + " pso " + fmt(p) +
                " ga " + fmt(g) + (broken.empty() ? "" : " invariant: " + broken) + " (" +
                trapped_counts(report) + "); ";
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path out = fs::temp_directory_path() / "spsodpp_acceptance_cli";
  fs::remove_all(out);
  const std::string cli = SPSODPP_CLI_PATH;
  const std::string cfg = (kConfigs / "case1.cfg").string();
  struct Command {
    std::string args;
    std::string file;
  };
  const Command commands[] = {
      {"plan " + cfg + " --method spso --seed 3", "case1_base_plan_spso_s3.csv"},
      {"compare " + cfg + " --motion shared --seeds 3", "case1_base_compare_shared.csv"},
      {"compare " + cfg + " --motion independent --seeds 3",
       "case1_base_compare_independent.csv"},
      {"sweep " + cfg + " --radii 100 --seeds 2", "case1_base_sweep_R100.csv"},
  };
  const std::string pools[] = {"--workers 1 --eval-workers 1", "--workers 1 --eval-workers 1",
                               "--workers 3 --eval-workers 4"};
  Outcome o;
  for (const auto& c : commands) {
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < 3; ++i) {
      const fs::path dir = out / std::to_string(i);
      const std::string cmd = "\"" + cli + "\" " + c.args + " " + pools[i] + " --format csv --out \"" +
                              dir.string() + "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      if (code != 0 && code != 3) {
        o.pass = false;
        o.detail += "'" + c.args + "' exited " + std::to_string(code) + "; ";
      }
      outputs.push_back(slurp(dir / c.file));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    if (!same) {
      o.pass = false;
      o.detail += "'" + c.args + "' differs; ";
    }
  }
  fs::remove_all(out);
  if (o.pass) o.detail = "plan, compare (shared, independent), sweep: identical across reruns and pool sizes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "cost kernels exact", kernels},
      {2, "encode/decode roundtrip", roundtrip},
      {3, "segment distance oracle", oracle},
      {4, "static convex sanity", convex},
      {5, "dominance ordering (mean Cost 1 and Cost 8, 20% margin)", dominance},
      {6, "monotone replanning trend", monotone},
      {7, "radius sweep shape and dynamics invariants", sweep},
      {8, "byte-identical CLI output", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("[%s] criterion %d: %s (%.1f s)\n        %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
  return failed ? 1 : 0;
}
