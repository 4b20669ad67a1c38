#pragma once

#include <string>
#include <vector>

#include "minnaert/config.hpp"
#include "minnaert/layerpot.hpp"

namespace minnaert {

/// One output file, kept in memory until the whole scenario has succeeded.
struct Artifact {
  std::string name;
  std::string content;
};

/// Capacitance, volume and eta coefficients of the configured shape.
struct ShapeData {
  std::string kind;
  std::size_t faces = 0;  // 0 for the analytic sphere
  double capacitance = 0.0;
  double volume = 0.0;
  double area = 0.0;
  double condition_estimate = 0.0;
  EtaCoefficients eta;
  IdentityResiduals identities;
  double null_identity_residual = 0.0;
};

/// Closed-form eta coefficients of a sphere of radius R.
EtaCoefficients sphere_eta(double radius, double c0);

/// `with_identities` also assembles K*_0 and the double-surface reports.
ShapeData resolve_shape(const GeometryConfig& geometry, double c0, bool with_identities);

/// Runs the scenario named in the config; throws minnaert::Error on failure
/// and produces nothing in that case.
std::vector<Artifact> run_scenario(const RunConfig& config, int jobs);

/// Creates `dir` and writes every artifact into it.
void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts);

}  // namespace minnaert
