// Command-line front end: single missions, method comparisons and
// motion-radius sweeps over a scenario file.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 at least one
// mission was trapped (outputs are still written).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "spsodpp/bench.hpp"

namespace {

using namespace spsodpp;

constexpr int kExitConfig = 2;
constexpr int kExitTrapped = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Format> parse_formats(const std::string& s) {
  std::vector<Format> out;
  for (const auto& f : split_list(s)) {
    if (f == "csv") out.push_back(Format::csv);
    else if (f == "json") out.push_back(Format::json);
    else throw ConfigError("--format", "unknown format '" + f + "' (expected csv or json)");
  }
  if (out.empty()) throw ConfigError("--format", "no output format given");
  return out;
}

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  for (const auto& m : split_list(s)) {
    try {
      out.push_back(parse_method(m));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--methods", e.what());
    }
  }
  if (out.empty()) throw ConfigError("--methods", "no method given");
  return out;
}

std::vector<double> parse_radii(const std::string& s) {
  std::vector<double> out;
  for (const auto& r : split_list(s)) {
    char* end = nullptr;
    const double v = std::strtod(r.c_str(), &end);
    if (end == r.c_str() || *end != '\0' || !(v >= 0.0))
      throw ConfigError("--radii", "bad radius '" + r + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--radii", "no radius given");
  return out;
}

/// First `count` config seeds, extended with consecutive values if needed.
void resize_seeds(ScenarioConfig& config, std::size_t count) {
  if (count == 0) throw ConfigError("--seeds", "must be at least 1");
  auto& s = config.seeds;
  while (s.size() < count) s.push_back(s.back() + 1);
  s.resize(count);
}

void apply_workers(ScenarioConfig& config, std::size_t workers,
                   std::size_t eval_workers) {
  if (workers) config.workers = workers;
  if (eval_workers) {
    config.spso.workers = eval_workers;
    config.pso.workers = eval_workers;
    config.ga.workers = eval_workers;
  }
}

int finish(const BenchReport& report, const std::vector<std::filesystem::path>& written) {
  for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
  const CostTable t = cost_table(report);
  std::cout << "cost";
  for (const auto& m : t.methods) std::cout << '\t' << m;
  std::cout << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::cout << "Cost " << r + 1;
    for (double v : t.rows[r]) std::cout << '\t' << v;
    std::cout << '\n';
  }
  if (report.any_trapped()) {
    std::cerr << "warning: at least one mission was trapped (no finite-cost path)\n";
    return kExitTrapped;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic path planning with spherical-vector PSO and baselines"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string formats = "csv,json";
  std::size_t workers = 0;
  std::size_t eval_workers = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Scenario file")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--format", formats, "Comma-separated output formats: csv,json");
    sub->add_option("--workers", workers, "Missions run concurrently");
    sub->add_option("--eval-workers", eval_workers,
                    "Fitness evaluations run concurrently inside each solver");
  };

  auto* plan = app.add_subcommand("plan", "Fly one mission with one method");
  common(plan);
  std::string method = "spso";
  std::uint64_t seed = 1;
  plan->add_option("--method", method, "spso, pso or ga");
  plan->add_option("--seed", seed, "Mission seed");

  auto* compare = app.add_subcommand("compare", "Compare methods over several seeds");
  common(compare);
  std::string motion;
  std::size_t n_seeds = 0;
  std::string methods = "spso,pso,ga";
  compare->add_option("--motion", motion, "shared or independent threat motion");
  compare->add_option("--seeds", n_seeds, "Number of seeds (default: config list)");
  compare->add_option("--methods", methods, "Comma-separated methods");

  auto* sweep = app.add_subcommand("sweep", "Compare methods across threat motion radii");
  common(sweep);
  std::string radii = "50,100,200";
  sweep->add_option("--radii", radii, "Comma-separated motion radii");
  sweep->add_option("--motion", motion, "shared or independent threat motion");
  sweep->add_option("--seeds", n_seeds, "Number of seeds (default: config list)");
  sweep->add_option("--methods", methods, "Comma-separated methods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    ScenarioConfig config = load_scenario(config_path);
    apply_workers(config, workers, eval_workers);
    const auto fmt = parse_formats(formats);
    MotionMode mode = config.motion_mode;
    if (!motion.empty()) {
      try {
        mode = parse_motion_mode(motion);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--motion", e.what());
      }
    }
    if (n_seeds) resize_seeds(config, n_seeds);

    if (plan->parsed()) {
      Method m;
      try {
        m = parse_method(method);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--method", e.what());
      }
      config.seeds = {seed};
      const Method one[] = {m};
      const BenchReport report = run_comparison(config, one, mode);
      const auto stem = config.name + "_plan_" + std::string(to_string(m)) + "_s" +
                        std::to_string(seed);
      return finish(report, emit(report, fmt, out_dir, stem));
    }
    if (compare->parsed()) {
      const auto ms = parse_methods(methods);
      const BenchReport report = run_comparison(config, ms, mode);
      const auto stem = config.name + "_compare_" + std::string(to_string(mode));
      return finish(report, emit(report, fmt, out_dir, stem));
    }
    const auto ms = parse_methods(methods);
    const auto rs = parse_radii(radii);
    int code = 0;
    for (const auto& report : run_radius_sweep(config, rs, ms, mode)) {
      std::ostringstream stem;
      stem << config.name << "_sweep_R" << report.motion_radius;
      std::cout << "radius " << report.motion_radius << "\n";
      code = std::max(code, finish(report, emit(report, fmt, out_dir, stem.str())));
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DemParseError& e) {
    std::cerr << "config error: terrain: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
