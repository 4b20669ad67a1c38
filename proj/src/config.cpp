#include "minnaert/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Maps key paths to 1-based line numbers of the raw text, for messages.
class Locator {
 public:
  Locator(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  int line(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    bool found = false;
    for (const auto& key : path) {
      const auto p = text_.find("\"" + key + "\"", pos);
      if (p == std::string::npos) break;
      pos = p;
      found = true;
    }
    if (!found) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
  }

  int line_at_offset(std::size_t offset) const {
    offset = std::min(offset, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(offset), '\n'));
  }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
    fail_line(line(path), msg);
  }

  [[noreturn]] void fail_line(int ln, const std::string& msg) const {
    throw ConfigError(ln, origin_ + ":" + std::to_string(ln) + ": " + msg);
  }

 private:
  const std::string& text_;
  std::string origin_;
};

std::string dotted(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& k : path) s += (s.empty() ? "" : ".") + k;
  return s;
}

class Reader {
 public:
  Reader(const json& root, const Locator& loc) : root_(root), loc_(loc) {}

  const json* find(const std::vector<std::string>& path) const {
    const json* node = &root_;
    for (const auto& k : path) {
      if (!node->is_object()) return nullptr;
      auto it = node->find(k);
      if (it == node->end()) return nullptr;
      node = &*it;
    }
    return node;
  }

  bool has(const std::vector<std::string>& path) const { return find(path) != nullptr; }

  double number(const std::vector<std::string>& path, double fallback) const {
    const json* n = find(path);
    if (!n) return fallback;
    if (!n->is_number()) loc_.fail(path, dotted(path) + " must be a number");
    const double v = n->get<double>();
    if (!std::isfinite(v)) loc_.fail(path, dotted(path) + " must be finite");
    return v;
  }

  double number(const std::vector<std::string>& path) const {
    if (!has(path)) loc_.fail(path, "missing required key " + dotted(path));
    return number(path, 0.0);
  }

  int integer(const std::vector<std::string>& path, int fallback) const {
    const json* n = find(path);
    if (!n) return fallback;
    if (!n->is_number_integer()) loc_.fail(path, dotted(path) + " must be an integer");
    return n->get<int>();
  }

  bool boolean(const std::vector<std::string>& path, bool fallback) const {
    const json* n = find(path);
    if (!n) return fallback;
    if (!n->is_boolean()) loc_.fail(path, dotted(path) + " must be true or false");
    return n->get<bool>();
  }

  std::string string(const std::vector<std::string>& path, const std::string& fallback) const {
    const json* n = find(path);
    if (!n) return fallback;
    if (!n->is_string()) loc_.fail(path, dotted(path) + " must be a string");
    return n->get<std::string>();
  }

  Vec3 vec3(const std::vector<std::string>& path, const Vec3& fallback) const {
    const json* n = find(path);
    if (!n) return fallback;
    return to_vec3(*n, path);
  }

  Vec3 to_vec3(const json& n, const std::vector<std::string>& path) const {
    if (!n.is_array() || n.size() != 3) loc_.fail(path, dotted(path) + " must be a 3-vector");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      if (!n[i].is_number()) loc_.fail(path, dotted(path) + " must hold numbers");
      v[i] = n[i].get<double>();
    }
    if (!v.allFinite()) loc_.fail(path, dotted(path) + " must be finite");
    return v;
  }

  std::vector<double> numbers(const std::vector<std::string>& path) const {
    const json* n = find(path);
    if (!n) return {};
    if (!n->is_array()) loc_.fail(path, dotted(path) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *n) {
      if (!e.is_number()) loc_.fail(path, dotted(path) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  const Locator& loc() const { return loc_; }

 private:
  const json& root_;
  const Locator& loc_;
};

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty()) return p;
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base_dir) / path).lexically_normal().string();
}

void read_geometry(const Reader& rd, RunConfig& c, const std::string& base_dir) {
  auto& g = c.geometry;
  g.kind = rd.string({"geometry", "kind"}, g.kind);
  g.radius = rd.number({"geometry", "radius"}, g.radius);
  g.level = rd.integer({"geometry", "level"}, g.level);
  g.path = resolve(base_dir, rd.string({"geometry", "path"}, ""));
  if (g.kind != "analytic_sphere" && g.kind != "icosphere" && g.kind != "mesh") {
    rd.loc().fail({"geometry", "kind"}, "geometry.kind must be analytic_sphere, icosphere or mesh");
  }
  if (g.kind != "mesh" && !(g.radius > 0.0)) rd.loc().fail({"geometry", "radius"}, "geometry.radius must be > 0");
  if (g.kind == "icosphere" && (g.level < 0 || g.level > 6)) {
    rd.loc().fail({"geometry", "level"}, "geometry.level must be in 0..6");
  }
  if (g.kind == "mesh") {
    if (g.path.empty()) rd.loc().fail({"geometry"}, "geometry.path is required for kind mesh");
    if (!fs::is_regular_file(g.path)) rd.loc().fail({"geometry", "path"}, "mesh file not found: " + g.path);
  }
}

void read_medium(const Reader& rd, RunConfig& c) {
  auto& m = c.medium;
  m.rho0 = rd.number({"medium", "rho0"}, m.rho0);
  m.k0 = rd.number({"medium", "k0"}, m.k0);
  m.rho1 = rd.number({"medium", "rho1"}, m.rho1);
  m.k1 = rd.number({"medium", "k1"}, m.k1);
  m.eps = rd.number({"medium", "eps"}, m.eps);
  m.y0 = rd.vec3({"medium", "y0"}, m.y0);
  for (const char* k : {"rho0", "k0", "rho1", "k1"}) {
    if (!(rd.number({"medium", k}, 1.0) > 0.0)) rd.loc().fail({"medium", k}, std::string("medium.") + k + " must be > 0");
  }
  if (!(m.eps >= 0.0)) rd.loc().fail({"medium", "eps"}, "medium.eps must be >= 0");
  if (!(m.rho1 * m.eps * m.eps < m.rho0)) rd.loc().fail({"medium", "eps"}, "contrast requires rho1 eps^2 < rho0");
}

void read_source(const Reader& rd, RunConfig& c) {
  auto& s = c.source;
  s.amplitude = rd.number({"source", "amplitude"}, s.amplitude);
  s.center = rd.vec3({"source", "center"}, c.medium.y0);
  const double r_in = rd.number({"source", "r_in"}, 0.5);
  const double r_out = rd.number({"source", "r_out"}, 1.0);
  if (!(r_in >= 0.0) || !(r_out > r_in)) rd.loc().fail({"source", "r_out"}, "source needs r_out > r_in >= 0");
  s.space = SpaceProfile(r_in, r_out);

  const std::string kind = rd.string({"source", "time", "kind"}, "bump");
  const double t0 = rd.number({"source", "time", "t0"}, 0.0);
  const double t1 = rd.number({"source", "time", "t1"}, 1.0);
  if (!(t0 >= 0.0) || !(t1 > t0)) rd.loc().fail({"source", "time"}, "source time support needs t1 > t0 >= 0");
  if (kind == "bump") {
    s.time = TimeProfile::bump(t0, t1);
  } else if (kind == "plateau") {
    const double ramp = rd.number({"source", "time", "ramp"}, 0.25 * (t1 - t0));
    if (!(ramp > 0.0) || !(2.0 * ramp < t1 - t0)) {
      rd.loc().fail({"source", "time", "ramp"}, "plateau ramp must be > 0 and shorter than half the support");
    }
    s.time = TimeProfile::plateau(t0, t1, ramp);
  } else {
    rd.loc().fail({"source", "time", "kind"}, "source.time.kind must be bump or plateau");
  }
}

void read_receivers(const Reader& rd, RunConfig& c) {
  const json* n = rd.find({"receivers"});
  if (!n) return;
  if (!n->is_array()) rd.loc().fail({"receivers"}, "receivers must be an array");
  for (const auto& e : *n) {
    if (e.is_number()) {
      const double r = e.get<double>();
      if (!(r > 0.0)) rd.loc().fail({"receivers"}, "receiver radii must be > 0");
      c.receivers.push_back(c.medium.y0 + Vec3(r, 0.0, 0.0));
    } else {
      c.receivers.push_back(rd.to_vec3(e, {"receivers"}));
    }
  }
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"capacitance", "resonance", "simulate", "oracle",
                                                 "sweep",       "features",  "invert"};
  return names;
}

RunConfig parse_config(const std::string& text, const std::string& origin, const std::string& scenario,
                       const std::string& base_dir) {
  Locator loc(text, origin);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    loc.fail_line(loc.line_at_offset(e.byte > 0 ? e.byte - 1 : 0), std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) loc.fail_line(1, "configuration must be a JSON object");
  Reader rd(root, loc);

  RunConfig c;
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), scenario) == names.end()) {
    loc.fail_line(0, "unknown scenario '" + scenario + "'");
  }
  c.scenario = scenario;
  if (!rd.has({"schema_version"})) loc.fail_line(1, "missing required key schema_version");
  c.schema_version = rd.integer({"schema_version"}, 0);
  if (c.schema_version != kSchemaVersion) {
    loc.fail({"schema_version"}, "unsupported schema_version " + std::to_string(c.schema_version));
  }
  const std::string named = rd.string({"scenario"}, scenario);
  if (named != scenario) loc.fail({"scenario"}, "config is for scenario '" + named + "', not '" + scenario + "'");

  read_geometry(rd, c, base_dir);
  read_medium(rd, c);
  read_source(rd, c);
  read_receivers(rd, c);

  c.time.t_end = rd.number({"time", "t_end"}, c.time.t_end);
  c.time.dt = rd.number({"time", "dt"}, c.time.dt);
  if (!(c.time.dt > 0.0)) loc.fail({"time", "dt"}, "time.dt must be > 0");
  if (!(c.time.t_end > 0.0)) loc.fail({"time", "t_end"}, "time.t_end must be > 0");

  auto& o = c.oracle;
  o.r_max = rd.number({"oracle", "r_max"}, o.r_max);
  o.cells_per_eps = rd.number({"oracle", "cells_per_eps"}, o.cells_per_eps);
  o.dr = rd.number({"oracle", "dr"}, o.dr);
  o.cfl = rd.number({"oracle", "cfl"}, o.cfl);
  o.scattered = rd.boolean({"oracle", "scattered"}, o.scattered);
  o.output_dt = rd.number({"oracle", "output_dt"}, o.output_dt);
  if (!(o.r_max > 0.0)) loc.fail({"oracle", "r_max"}, "oracle.r_max must be > 0");
  if (!(o.dr >= 0.0)) loc.fail({"oracle", "dr"}, "oracle.dr must be >= 0");
  if (o.dr == 0.0 && !(o.cells_per_eps >= 1.0)) loc.fail({"oracle", "cells_per_eps"}, "oracle.cells_per_eps must be >= 1");
  if (!(o.cfl > 0.0)) loc.fail({"oracle", "cfl"}, "oracle.cfl must be > 0");
  if (!(o.output_dt > 0.0)) loc.fail({"oracle", "output_dt"}, "oracle.output_dt must be > 0");

  c.sweep.eps = rd.numbers({"sweep", "eps"});
  c.sweep.horizon = rd.number({"sweep", "horizon"}, c.sweep.horizon);
  if (!(c.sweep.horizon > 0.0)) loc.fail({"sweep", "horizon"}, "sweep.horizon must be > 0");

  auto& f = c.features;
  f.trace = resolve(base_dir, rd.string({"features", "trace"}, ""));
  f.reference_trace = resolve(base_dir, rd.string({"features", "reference_trace"}, ""));
  f.reference_radius = rd.number({"features", "reference_radius"}, 0.0);
  f.receiver_radius = rd.number({"features", "receiver_radius"}, 0.0);
  f.t_a = rd.number({"features", "t_a"}, 0.0);
  f.t_b = rd.number({"features", "t_b"}, 0.0);
  f.threshold = rd.number({"features", "threshold"}, f.threshold);
  if (!(f.threshold > 0.0 && f.threshold < 1.0)) loc.fail({"features", "threshold"}, "features.threshold must be in (0, 1)");

  c.distance = rd.number({"invert", "distance"}, 0.0);
  c.jobs = rd.integer({"jobs"}, 1);
  if (c.jobs < 1) loc.fail({"jobs"}, "jobs must be >= 1");
  c.seed = static_cast<std::uint64_t>(rd.integer({"seed"}, 0));

  // Scenario-specific requirements.
  if (scenario == "simulate" || scenario == "oracle") {
    if (c.receivers.empty()) loc.fail({"receivers"}, "scenario " + scenario + " needs at least one receiver");
  }
  if (scenario == "simulate" || scenario == "oracle" || scenario == "sweep") {
    if (!(c.medium.eps > 0.0) && scenario != "sweep") loc.fail({"medium", "eps"}, "medium.eps must be > 0");
  }
  if (scenario == "simulate") {
    for (const auto& x : c.receivers) {
      if ((x - c.medium.y0).norm() < 1e-12) loc.fail({"receivers"}, "receiver coincides with the bubble center");
    }
  }
  if (scenario == "oracle" || scenario == "sweep") {
    for (const auto& x : c.receivers) {
      if ((x - c.medium.y0).norm() >= o.r_max) loc.fail({"receivers"}, "receiver lies beyond oracle.r_max");
    }
    if ((c.source.center - c.medium.y0).norm() > 1e-12) {
      loc.fail({"source", "center"}, "the radial oracle needs the source centered on medium.y0");
    }
  }
  if (scenario == "sweep") {
    if (c.sweep.eps.size() < 3) loc.fail({"sweep", "eps"}, "sweep.eps needs at least 3 values");
    if (c.receivers.empty()) loc.fail({"receivers"}, "sweep needs receivers");
    for (double e : c.sweep.eps) {
      if (!(e > 0.0) || !(c.medium.rho1 * e * e < c.medium.rho0)) {
        loc.fail({"sweep", "eps"}, "sweep.eps values must be > 0 with rho1 eps^2 < rho0");
      }
    }
  }
  if (scenario == "features" || scenario == "invert") {
    if (f.trace.empty()) loc.fail({"features"}, "features.trace is required");
    if (!fs::is_regular_file(f.trace)) loc.fail({"features", "trace"}, "trace file not found: " + f.trace);
    if (!f.reference_trace.empty()) {
      if (!fs::is_regular_file(f.reference_trace)) {
        loc.fail({"features", "reference_trace"}, "trace file not found: " + f.reference_trace);
      }
      if (!(f.receiver_radius > f.reference_radius && f.reference_radius > 0.0)) {
        loc.fail({"features", "receiver_radius"}, "need receiver_radius > reference_radius > 0");
      }
    }
    if (f.t_b != 0.0 && !(f.t_b > f.t_a)) loc.fail({"features", "t_b"}, "features.t_b must exceed t_a");
  }
  if (scenario == "invert" && !(c.distance > 0.0)) loc.fail({"invert", "distance"}, "invert.distance must be > 0");
  return c;
}

RunConfig load_config(const std::string& path, const std::string& scenario) {
  std::ifstream is(path);
  if (!is) throw ConfigError(0, path + ":0: cannot read configuration");
  std::stringstream ss;
  ss << is.rdbuf();
  const auto dir = fs::path(path).parent_path();
  return parse_config(ss.str(), path, scenario, dir.empty() ? "." : dir.string());
}

}  // namespace minnaert
