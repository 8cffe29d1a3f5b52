#include "spsodpp/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace spsodpp {

std::string_view to_string(MotionMode m) {
  return m == MotionMode::shared ? "shared" : "independent";
}

MotionMode parse_motion_mode(std::string_view name) {
  if (name == "shared") return MotionMode::shared;
  if (name == "independent") return MotionMode::independent;
  throw std::invalid_argument("unknown motion mode '" + std::string(name) +
                              "' (expected shared or independent)");
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

/// Tracks which keys of a mapping were consumed so unknown keys are reported.
class Section {
 public:
  Section(const YAML::Node& node, std::string path)
      : node_(node), path_(std::move(path)) {
    present_ = node_ && !node_.IsNull();
    if (present_ && !node_.IsMap()) throw ConfigError(path_, "expected a mapping");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node get(const std::string& key) {
    seen_.insert(key);
    if (!present_) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node& lookup = node_;
    return lookup[key];
  }

  template <class T>
  void read(const std::string& key, T& out) {
    const YAML::Node n = get(key);
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), "has the wrong type");
    }
  }

  template <class T>
  void read(const std::string& key, std::optional<T>& out) {
    const YAML::Node n = get(key);
    if (!n || n.IsNull()) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), "has the wrong type");
    }
  }

  template <class T>
  T require(const std::string& key) {
    if (!get(key)) throw ConfigError(field(key), "is required");
    T out{};
    read(key, out);
    return out;
  }

  void reject_unknown() const {
    if (!present_) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  YAML::Node node_;
  bool present_ = false;
  std::string path_;
  std::set<std::string> seen_;
};

void read_xy(Section& s, const std::string& key, double& x, double& y) {
  const YAML::Node n = s.get(key);
  if (!n) throw ConfigError(s.field(key), "is required");
  try {
    const auto v = n.as<std::vector<double>>();
    if (v.size() != 2) throw ConfigError(s.field(key), "expected [x, y]");
    x = v[0];
    y = v[1];
  } catch (const YAML::Exception&) {
    throw ConfigError(s.field(key), "expected [x, y]");
  }
}

void read_swarm(Section& parent, const std::string& key, SwarmParams& p) {
  Section s(parent.get(key), parent.field(key));
  s.read("swarm_size", p.swarm_size);
  s.read("iterations", p.iterations);
  s.read("inertia_start", p.inertia_start);
  s.read("inertia_end", p.inertia_end);
  s.read("cognitive_coeff", p.cognitive_coeff);
  s.read("social_coeff", p.social_coeff);
  s.read("velocity_limit", p.velocity_limit);
  s.reject_unknown();
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(parent.field(key), e.what());
  }
}

template <class Fn>
void checked(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text,
                              const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", std::string("YAML syntax error: ") + e.what());
  }
  if (!root || !root.IsMap()) throw ConfigError("", "scenario must be a mapping");

  ScenarioConfig c;
  c.config_hash = fnv1a_hex(text);
  Section top(root, "");
  top.read("name", c.name);
  top.read("description", c.description);
  top.read("n_waypoints", c.n_waypoints);
  if (c.n_waypoints < 3) throw ConfigError("n_waypoints", "must be at least 3");
  read_xy(top, "start", c.start_x, c.start_y);
  read_xy(top, "goal", c.goal_x, c.goal_y);
  top.read("rho_max", c.rho_max);
  if (const auto band = top.get("rho_band")) {
    try {
      const auto v = band.as<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("rho_band", "expected [min, max]");
      c.rho_band = RhoBand{v[0], v[1]};
    } catch (const YAML::Exception&) {
      throw ConfigError("rho_band", "expected [min, max]");
    }
  }
  top.read("ceiling", c.ceiling);
  top.read("warm_start", c.warm_start);
  top.read("workers", c.workers);

  {
    Section w(top.get("weights"), "weights");
    w.read("b1", c.weights.b1);
    w.read("b2", c.weights.b2);
    w.read("b3", c.weights.b3);
    w.read("b4", c.weights.b4);
    w.read("a1", c.weights.a1);
    w.read("a2", c.weights.a2);
    w.reject_unknown();
    checked("weights", [&] { c.weights.validate(); });
  }
  {
    Section a(top.get("altitude"), "altitude");
    a.read("h_min", c.h_min);
    a.read("h_max", c.h_max);
    a.reject_unknown();
    if (!(c.h_min > 0.0 && c.h_min < c.h_max))
      throw ConfigError("altitude", "need 0 < h_min < h_max");
  }
  {
    Section u(top.get("uav"), "uav");
    u.read("diameter", c.uav_diameter);
    u.read("safety_margin", c.safety_margin);
    u.reject_unknown();
    if (!(c.uav_diameter > 0.0)) throw ConfigError("uav.diameter", "must be positive");
    if (!(c.safety_margin >= 0.0))
      throw ConfigError("uav.safety_margin", "must be non-negative");
  }
  {
    const YAML::Node list = top.get("threats");
    if (list) {
      if (!list.IsSequence()) throw ConfigError("threats", "expected a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "threats[" + std::to_string(i) + "]";
        Section t(list[i], path);
        ThreatCylinder th;
        th.center_x = t.require<double>("x");
        th.center_y = t.require<double>("y");
        th.radius = t.require<double>("radius");
        t.reject_unknown();
        if (!(th.radius > 0.0)) throw ConfigError(path + ".radius", "must be positive");
        c.threats.push_back(th);
      }
    }
  }
  {
    Section m(top.get("motion"), "motion");
    m.read("radius", c.motion.motion_radius);
    m.read("max_rejection_tries", c.motion.max_rejection_tries);
    std::string mode(to_string(c.motion_mode));
    m.read("mode", mode);
    m.reject_unknown();
    checked("motion", [&] { c.motion.validate(); });
    checked("motion.mode", [&] { c.motion_mode = parse_motion_mode(mode); });
  }
  {
    Section t(top.get("terrain"), "terrain");
    std::optional<std::string> file;
    t.read("file", file);
    if (file) {
      std::filesystem::path p(*file);
      c.terrain.file = p.is_absolute() ? p : base_dir / p;
    }
    Section s(t.get("synth"), "terrain.synth");
    s.read("seed", c.terrain.seed);
    s.read("extent", c.terrain.extent);
    s.read("hills", c.terrain.hills);
    s.read("max_height", c.terrain.max_height);
    s.read("resolution", c.terrain.resolution);
    s.reject_unknown();
    t.reject_unknown();
    if (!(c.terrain.extent > 0.0))
      throw ConfigError("terrain.synth.extent", "must be positive");
    if (!(c.terrain.max_height >= 0.0))
      throw ConfigError("terrain.synth.max_height", "must be non-negative");
    if (c.terrain.resolution < 2)
      throw ConfigError("terrain.synth.resolution", "must be at least 2");
  }
  read_swarm(top, "spso", c.spso);
  read_swarm(top, "pso", c.pso);
  {
    Section g(top.get("ga"), "ga");
    g.read("population", c.ga.population);
    g.read("generations", c.ga.generations);
    g.read("crossover_rate", c.ga.crossover_rate);
    g.read("mutation_rate", c.ga.mutation_rate);
    g.read("tournament_size", c.ga.tournament_size);
    g.read("elitism", c.ga.elitism);
    g.reject_unknown();
    checked("ga", [&] { c.ga.validate(); });
  }
  top.read("seeds", c.seeds);
  if (c.seeds.empty()) throw ConfigError("seeds", "must list at least one seed");
  top.reject_unknown();

  // Cross-field checks need the concrete terrain.
  try {
    (void)build_scenario(c);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("", e.what());
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

Scenario build_scenario(const ScenarioConfig& c) {
  TerrainGrid terrain =
      c.terrain.file ? load_dem_file(c.terrain.file->string())
                     : synth_terrain(c.terrain.seed, c.terrain.extent, c.terrain.hills,
                                     c.terrain.max_height, c.terrain.resolution);

  PathProblem p;
  p.n = c.n_waypoints;
  p.h_min = c.h_min;
  p.h_max = c.h_max;
  const double ceiling = c.ceiling.value_or(terrain.max_height() + c.h_max);
  p.bounds = {{terrain.origin_x(), terrain.origin_y(), 0.0},
              {terrain.max_x(), terrain.max_y(), ceiling}};
  const double mid = 0.5 * (c.h_min + c.h_max);
  auto place = [&](double x, double y, const char* field) {
    auto g = terrain.try_height(x, y);
    if (!g) throw ConfigError(field, "lies outside the terrain extent");
    return Waypoint{x, y, *g + mid};
  };
  p.start = place(c.start_x, c.start_y, "start");
  p.goal = place(c.goal_x, c.goal_y, "goal");
  p.rho_max = c.rho_max.value_or(default_rho_max(p.start, p.goal, p.n));
  p.rho_band = c.rho_band;
  checked("", [&] { p.validate(); });

  Environment env{std::move(terrain), c.threats, c.uav_diameter, c.safety_margin};
  checked("threats", [&] { env.validate(); });
  for (std::size_t i = 0; i < env.threats.size(); ++i) {
    const auto& t = env.threats[i];
    for (const auto& w : {p.start, p.goal})
      if (std::hypot(w.x - t.center_x, w.y - t.center_y) <= c.uav_diameter + t.radius)
        throw ConfigError("threats[" + std::to_string(i) + "]",
                          "dead-zone covers the start or goal");
  }
  return {std::move(p), std::move(env)};
}

SolverConfig solver_config(const ScenarioConfig& config, Method method) {
  SolverConfig s;
  s.method = method;
  s.swarm = method == Method::pso ? config.pso : config.spso;
  s.ga = config.ga;
  s.warm_start = config.warm_start;
  return s;
}

}  // namespace spsodpp
