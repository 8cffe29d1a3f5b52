#include "spsodpp/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spsodpp/parallel.hpp"

namespace spsodpp {

using nlohmann::json;

bool BenchReport::any_trapped() const {
  for (const auto& m : methods)
    for (const auto& log : m.logs)
      if (log.trapped) return true;
  return false;
}

std::vector<double> mean_costs(std::span<const MissionLog> logs) {
  std::vector<double> out;
  if (logs.empty()) return out;
  const std::size_t k = logs.front().checkpoint_costs.size();
  out.assign(k, 0.0);
  for (const auto& log : logs) {
    if (log.checkpoint_costs.size() != k)
      throw std::invalid_argument("mean_costs: logs differ in checkpoint count");
    for (std::size_t i = 0; i < k; ++i) out[i] += log.checkpoint_costs[i];
  }
  for (auto& v : out) v /= double(logs.size());
  return out;
}

namespace {
constexpr std::uint64_t kMotionTag = 0x4d4f54;
constexpr std::uint64_t kSolverTag = 0x534f4c;
}  // namespace

MissionSeeds scenario_seeds(std::uint64_t seed, Method method, std::size_t run_index,
                            MotionMode mode) {
  const auto m = static_cast<std::uint64_t>(method);
  MissionSeeds s;
  s.motion = mode == MotionMode::shared
                 ? derive_seed({seed, kMotionTag})
                 : derive_seed({seed, m, std::uint64_t(run_index), kMotionTag});
  s.solver = derive_seed({seed, m, kSolverTag});
  return s;
}

std::vector<std::vector<MissionLog>> run_scenario(const ScenarioConfig& config,
                                                  std::span<const Method> methods,
                                                  MotionMode mode) {
  const Scenario sc = build_scenario(config);
  const std::size_t n_seeds = config.seeds.size();
  std::vector<std::vector<MissionLog>> out(methods.size(),
                                           std::vector<MissionLog>(n_seeds));
  if (methods.empty()) return out;
  WorkPool pool(config.workers);

  if (mode == MotionMode::independent) {
    pool.parallel_for(methods.size() * n_seeds, [&](std::size_t job) {
      const std::size_t m = job / n_seeds;
      const std::size_t s = job % n_seeds;
      const auto seeds = scenario_seeds(config.seeds[s], methods[m], s, mode);
      MissionLog log = run_mission(sc.problem, sc.env, config.weights, config.motion,
                                   solver_config(config, methods[m]), seeds);
      log.seed = config.seeds[s];
      out[m][s] = std::move(log);
    });
    return out;
  }

  pool.parallel_for(n_seeds, [&](std::size_t s) {
    const std::uint64_t seed = config.seeds[s];
    std::vector<MissionRunner> runners;
    runners.reserve(methods.size());
    for (Method m : methods)
      runners.emplace_back(sc.problem, sc.env, config.weights, solver_config(config, m),
                           scenario_seeds(seed, m, s, mode).solver);
    const std::uint64_t motion_seed = scenario_seeds(seed, methods[0], s, mode).motion;
    Rng motion(motion_seed);
    Environment env = sc.env;
    std::vector<Waypoint> positions(runners.size());
    while (!runners.front().planning_done()) {
      for (auto& r : runners) r.plan_and_advance();
      if (runners.front().planning_done()) break;
      for (std::size_t i = 0; i < runners.size(); ++i) positions[i] = runners[i].position();
      env = step_threats(env, config.motion, positions, motion);
      for (auto& r : runners) r.set_threats(env.threats);
    }
    for (std::size_t m = 0; m < runners.size(); ++m) {
      runners[m].finish();
      MissionLog log = runners[m].log();
      log.seed = seed;
      log.motion_seed = motion_seed;
      out[m][s] = std::move(log);
    }
  });
  return out;
}

std::vector<MissionLog> run_scenario(const ScenarioConfig& config, Method method,
                                     MotionMode mode) {
  const Method one[] = {method};
  return std::move(run_scenario(config, one, mode).front());
}

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

BenchReport run_comparison(const ScenarioConfig& config,
                           std::span<const Method> methods, MotionMode mode) {
  if (methods.empty()) throw std::invalid_argument("run_comparison: no methods given");
  BenchReport report;
  report.scenario = config.name;
  report.config_hash = config.config_hash;
  report.timestamp = utc_timestamp();
  report.motion_mode = mode;
  report.motion_radius = config.motion.motion_radius;
  auto logs = run_scenario(config, methods, mode);
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodRuns runs;
    runs.method = methods[m];
    runs.logs = std::move(logs[m]);
    runs.mean_costs = mean_costs(runs.logs);
    report.methods.push_back(std::move(runs));
  }
  return report;
}

std::vector<BenchReport> run_radius_sweep(const ScenarioConfig& config,
                                          std::span<const double> radii,
                                          std::span<const Method> methods,
                                          MotionMode mode) {
  if (radii.empty()) throw std::invalid_argument("run_radius_sweep: no radii given");
  std::vector<BenchReport> out;
  for (double r : radii) {
    if (!(r >= 0.0)) throw std::invalid_argument("run_radius_sweep: radii must be >= 0");
    ScenarioConfig c = config;
    c.motion.motion_radius = r;
    out.push_back(run_comparison(c, methods, mode));
  }
  return out;
}

CostTable cost_table(const BenchReport& report) {
  CostTable t;
  t.config_hash = report.config_hash;
  std::size_t rows = 0;
  for (const auto& m : report.methods) {
    t.methods.emplace_back(to_string(m.method));
    rows = std::max(rows, m.mean_costs.size());
  }
  t.rows.assign(rows, std::vector<double>(report.methods.size(), 0.0));
  for (std::size_t c = 0; c < report.methods.size(); ++c) {
    const auto& means = report.methods[c].mean_costs;
    for (std::size_t r = 0; r < rows; ++r)
      t.rows[r][c] = r < means.size() ? means[r] : std::nan("");
  }
  return t;
}

namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_number(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::nan("");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("csv: bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json path_json(const Path& p) {
  json a = json::array();
  for (const auto& w : p) a.push_back({w.x, w.y, w.z});
  return a;
}

json log_json(const MissionLog& log) {
  json j;
  j["method"] = std::string(to_string(log.method));
  j["seed"] = log.seed;
  j["motion_seed"] = log.motion_seed;
  j["solver_seed"] = log.solver_seed;
  j["trapped"] = log.trapped;
  j["trapped_at"] = log.trapped_at ? json(*log.trapped_at + 1) : json(nullptr);
  json costs = json::array();
  for (double c : log.checkpoint_costs) costs.push_back(number_or_null(c));
  j["checkpoint_costs"] = costs;
  json checkpoints = json::array();
  for (std::size_t k = 0; k < log.checkpoint_costs.size(); ++k) {
    json cp;
    cp["index"] = k + 1;
    cp["total"] = number_or_null(log.checkpoint_costs[k]);
    if (k < log.checkpoint_breakdowns.size()) {
      const auto& b = log.checkpoint_breakdowns[k];
      cp["f1"] = number_or_null(b.f1);
      cp["f2"] = number_or_null(b.f2);
      cp["f3"] = number_or_null(b.f3);
      cp["f4"] = number_or_null(b.f4);
    }
    if (k < log.threat_trace.size()) {
      json threats = json::array();
      for (const auto& t : log.threat_trace[k])
        threats.push_back({t.center_x, t.center_y, t.radius});
      cp["threats"] = threats;
    }
    if (k < log.plans.size()) cp["plan"] = path_json(log.plans[k]);
    checkpoints.push_back(cp);
  }
  j["checkpoints"] = checkpoints;
  j["final_path"] = path_json(log.final_path);
  return j;
}

}  // namespace

std::string to_csv(const BenchReport& report) {
  const CostTable t = cost_table(report);
  std::ostringstream os;
  os << "# scenario=" << report.scenario << " config_hash=" << report.config_hash
     << " motion=" << to_string(report.motion_mode)
     << " radius=" << format_number(report.motion_radius)
     << " version=" << report.version << "\n";
  os << "cost";
  for (const auto& m : t.methods) os << ',' << m;
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "Cost " << (r + 1);
    for (double v : t.rows[r]) os << ',' << format_number(v);
    os << '\n';
  }
  return os.str();
}

CostTable parse_csv(const std::string& text) {
  CostTable t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("config_hash=");
      if (pos != std::string::npos) {
        const auto end = line.find(' ', pos);
        t.config_hash = line.substr(pos + 12, end == std::string::npos
                                                  ? std::string::npos
                                                  : end - pos - 12);
      }
      continue;
    }
    auto cells = split(line, ',');
    if (!header) {
      if (cells.empty() || cells[0] != "cost")
        throw std::invalid_argument("csv: missing 'cost' header");
      t.methods.assign(cells.begin() + 1, cells.end());
      header = true;
      continue;
    }
    if (cells.size() != t.methods.size() + 1)
      throw std::invalid_argument("csv: row has " + std::to_string(cells.size()) +
                                  " cells, expected " +
                                  std::to_string(t.methods.size() + 1));
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(parse_number(cells[i]));
    t.rows.push_back(std::move(row));
  }
  if (!header) throw std::invalid_argument("csv: no header line");
  return t;
}

std::string to_json(const MissionLog& log) { return log_json(log).dump(2); }

std::string to_json(const BenchReport& report) {
  json j;
  j["scenario"] = report.scenario;
  j["config_hash"] = report.config_hash;
  j["version"] = report.version;
  j["generated_at"] = report.timestamp;
  j["motion_mode"] = std::string(to_string(report.motion_mode));
  j["motion_radius"] = report.motion_radius;
  json methods = json::array();
  for (const auto& m : report.methods) {
    json mj;
    mj["method"] = std::string(to_string(m.method));
    json means = json::array();
    for (double v : m.mean_costs) means.push_back(number_or_null(v));
    mj["mean_costs"] = means;
    json runs = json::array();
    for (const auto& log : m.logs) runs.push_back(log_json(log));
    mj["runs"] = runs;
    methods.push_back(mj);
  }
  j["methods"] = methods;
  return j.dump(2);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" +
                             path.string() + "': " + ec.message());
}

std::vector<std::filesystem::path> emit(const BenchReport& report,
                                        std::span<const Format> formats,
                                        const std::filesystem::path& dir,
                                        const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + dir.string() +
                             "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (Format f : formats) {
    const auto path = dir / (stem + (f == Format::csv ? ".csv" : ".json"));
    write_atomic(path, f == Format::csv ? to_csv(report) : to_json(report));
    written.push_back(path);
  }
  return written;
}

}  // namespace spsodpp
