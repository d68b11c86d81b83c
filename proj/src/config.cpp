#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "common.hpp"

namespace dunkl {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "dimension", "multiplicities", "grid",    "frequency", "atoms_frequency", "scales",
    "epsilon",   "max_outer",      "balls",   "input",     "system",          "output_dir",
    "seed",      "threads"};

template <typename T>
T take(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw ConfigError(std::string("invalid value for key '") + key + "'", key);
  }
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(), "");
  }
  if (!j.is_object()) throw ConfigError("config root must be an object", "");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kTopKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'", it.key());

  RunConfig c;
  c.dimension = take(j, "dimension", c.dimension);
  if (j.contains("multiplicities")) {
    try {
      c.multiplicities = j.at("multiplicities").get<std::vector<double>>();
    } catch (const std::exception&) {
      throw ConfigError("multiplicities must be an array of numbers", "multiplicities");
    }
  } else {
    c.multiplicities.assign(static_cast<std::size_t>(c.dimension), 0.5);
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    c.grid_points = take(g, "points", c.grid_points);
    c.grid_half_width = take(g, "half_width", c.grid_half_width);
  }
  if (j.contains("frequency")) {
    const json& g = j.at("frequency");
    c.freq_points = take(g, "points", c.freq_points);
    c.freq_bandwidth = take(g, "bandwidth", c.freq_bandwidth);
  }
  if (j.contains("atoms_frequency")) {
    const json& g = j.at("atoms_frequency");
    c.atoms_freq_points = take(g, "points", c.atoms_freq_points);
    c.atoms_freq_bandwidth = take(g, "bandwidth", c.atoms_freq_bandwidth);
  } else {
    // Derived default: twice the main window, capped by the grid Nyquist.
    double nyquist = kPi * c.grid_points / (2.0 * c.grid_half_width);
    c.atoms_freq_points = 2 * c.freq_points;
    c.atoms_freq_bandwidth = std::min(3.0 * c.freq_bandwidth, 0.95 * nyquist);
  }
  if (j.contains("scales")) {
    const json& g = j.at("scales");
    c.j_min = take(g, "j_min", c.j_min);
    c.j_max = take(g, "j_max", c.j_max);
  }
  c.epsilon_target = take(j, "epsilon", c.epsilon_target);
  c.max_outer = take(j, "max_outer", c.max_outer);
  if (j.contains("balls")) c.refine_balls = take(j.at("balls"), "refine", c.refine_balls);
  if (j.contains("input")) {
    const json& g = j.at("input");
    if (g.is_string()) {
      c.input = g.get<std::string>();
    } else if (g.is_object()) {
      c.input = take<std::string>(g, "path", c.input);
      if (g.contains("builtin")) c.input = "builtin:" + g.at("builtin").get<std::string>();
      c.input_radius = take(g, "radius", c.input_radius);
    } else {
      throw ConfigError("input must be a string or object", "input");
    }
  }
  c.system = take(j, "system", c.system);
  c.output_dir = take(j, "output_dir", c.output_dir);
  c.seed = take<std::uint64_t>(j, "seed", c.seed);
  c.threads = take(j, "threads", c.threads);
  c.validate();
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, "");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void RunConfig::validate() const {
  if (dimension < 1 || dimension > 2) throw ConfigError("dimension must be 1 or 2", "dimension");
  if (static_cast<int>(multiplicities.size()) != dimension)
    throw ConfigError("multiplicities must have one entry per axis", "multiplicities");
  for (double k : multiplicities)
    if (!(k >= 0.0) || k > 3.5) throw ConfigError("multiplicities must lie in [0, 3.5]", "multiplicities");
  if (grid_points < 32 || grid_points % 2) throw ConfigError("grid.points must be even and >= 32", "grid.points");
  if (!(grid_half_width > 0.0)) throw ConfigError("grid.half_width must be positive", "grid.half_width");
  if (freq_points < 32 || freq_points % 2)
    throw ConfigError("frequency.points must be even and >= 32", "frequency.points");
  if (!(freq_bandwidth > 0.0)) throw ConfigError("frequency.bandwidth must be positive", "frequency.bandwidth");
  if (j_min > j_max) throw ConfigError("scales.j_min must not exceed scales.j_max", "scales.j_min");
  if (max_outer < 1) throw ConfigError("max_outer must be positive", "max_outer");
  if (!(epsilon_target >= 0.0)) throw ConfigError("epsilon must be nonnegative", "epsilon");
  double nyquist = kPi * grid_points / (2.0 * grid_half_width);
  if (freq_bandwidth > nyquist)
    throw ConfigError("frequency.bandwidth exceeds the grid Nyquist limit", "frequency.bandwidth");
  if (atoms_freq_bandwidth > nyquist)
    throw ConfigError("atoms_frequency.bandwidth exceeds the grid Nyquist limit", "atoms_frequency.bandwidth");
}

std::string RunConfig::canonical_json() const {
  json j;
  j["dimension"] = dimension;
  j["multiplicities"] = multiplicities;
  j["grid"] = {{"points", grid_points}, {"half_width", grid_half_width}};
  j["frequency"] = {{"points", freq_points}, {"bandwidth", freq_bandwidth}};
  j["atoms_frequency"] = {{"points", atoms_freq_points}, {"bandwidth", atoms_freq_bandwidth}};
  j["scales"] = {{"j_min", j_min}, {"j_max", j_max}};
  j["epsilon"] = epsilon_target;
  j["max_outer"] = max_outer;
  j["balls"] = {{"refine", refine_balls}};
  j["input"] = {{"path", input}, {"radius", input_radius}};
  j["system"] = system;
  j["seed"] = seed;
  return j.dump();
}

std::uint64_t RunConfig::config_hash() const {
  std::string s = canonical_json();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dunkl
