#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minnaert/geometry.hpp"
#include "minnaert/resonance.hpp"
#include "minnaert/sources.hpp"

namespace minnaert {

inline constexpr int kSchemaVersion = 1;

struct GeometryConfig {
  std::string kind = "analytic_sphere";  // analytic_sphere | icosphere | mesh
  double radius = 1.0;
  int level = 3;
  std::string path;  // mesh file, resolved against the config directory
};

struct TimeConfig {
  double t_end = 20.0;
  double dt = 0.01;
};

struct OracleConfig {
  double r_max = 4.0;
  double cells_per_eps = 32.0;  // used when dr is 0
  double dr = 0.0;
  double cfl = 0.5;
  bool scattered = true;  // also run without the bubble and emit u - v^f
  double output_dt = 0.005;
};

struct SweepSettings {
  std::vector<double> eps;
  double horizon = 2.0;
};

struct FeatureConfig {
  std::string trace;            // CSV to analyze
  std::string reference_trace;  // optional near-bubble CSV for differential birth time
  double reference_radius = 0.0;
  double receiver_radius = 0.0;
  double t_a = 0.0;
  double t_b = 0.0;  // 0: end of the trace
  double threshold = 0.01;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string scenario;
  GeometryConfig geometry;
  MediumParams medium;
  SourceSpec source;
  std::vector<Vec3> receivers;
  TimeConfig time;
  OracleConfig oracle;
  SweepSettings sweep;
  FeatureConfig features;
  double distance = 0.0;  // bubble to receiver for inversion
  int jobs = 1;
  std::uint64_t seed = 0;
};

/// Reads and validates a JSON run configuration for `scenario`. Every failure
/// is a ConfigError whose message reads "path:line: message". Relative file
/// names are resolved against the config's directory.
RunConfig load_config(const std::string& path, const std::string& scenario);
RunConfig parse_config(const std::string& text, const std::string& origin, const std::string& scenario,
                       const std::string& base_dir = ".");

const std::vector<std::string>& scenario_names();

}  // namespace minnaert
