#pragma once

#include <vector>

#include "minnaert/resonance.hpp"
#include "minnaert/sources.hpp"
#include "minnaert/trace.hpp"

namespace minnaert {

/// Radially symmetric full-wave problem: spherical bubble of radius eps
/// (medium.eps) centered at the source center, radial annular source outside
/// it, outgoing boundary at r_max.
struct RadialConfig {
  MediumParams medium;
  SourceSpec source;
  double r_max = 4.0;
  std::size_t nr = 0;
  double cfl = 0.5;
  double t_end = 10.0;
  std::vector<double> receivers;
  bool bubble = true;              // false: uniform background
  std::size_t output_stride = 1;   // keep every stride-th time step

  static constexpr double kMaxCfl = 0.9;
  static constexpr double kMinCellsPerRadius = 16.0;

  double dr() const { return r_max / static_cast<double>(nr); }
  /// dt = cfl dr / max(c0, c1).
  double dt() const;
  /// Throws InvalidArgument, StabilityError or ResolutionError.
  void validate() const;
  /// Sets nr and stretches r_max so that dr is exactly `target_dr`.
  void set_spacing(double target_dr);
};

struct RadialSolution {
  std::vector<WaveTrace> traces;  // one per receiver, t_start = 0
  double dr = 0.0;
  double dt = 0.0;
  double max_abs = 0.0;  // over the whole space-time grid
};

/// Conservative second-order leapfrog for
///   (1/k) u_tt = r^-2 (r^2 rho^-1 u_r)_r + f
/// on cell centers (i + 1/2) dr. The bubble boundary sits on a cell face.
/// Face transmissibilities are series resistances int rho / r^2 dr between
/// neighbouring centers, so flux is single valued at every face and exact for
/// static 1/r fields. First-order Mur condition on r u at r_max.
RadialSolution solve_radial(const RadialConfig& config);

/// Face transmissibilities as used by solve_radial; entry j couples cells j-1
/// and j, entry 0 is the r = 0 face and is zero.
std::vector<double> face_transmissibility(const RadialConfig& config);

struct SweepPoint {
  double eps = 0.0;
  double dr = 0.0;
  double t_end = 0.0;
  double remainder = 0.0;       // norm of u - v^f - tail
  double remainder_sup = 0.0;   // weighted sup over receivers and time
  double tail = 0.0;            // norm of tail
  double ablated = 0.0;         // norm of u - v^f
};

struct SweepReport {
  std::vector<SweepPoint> points;
  double remainder_slope = 0.0;
  double remainder_sup_slope = 0.0;
  double tail_slope = 0.0;
  double ablated_slope = 0.0;
};

struct SweepConfig {
  RadialConfig base;              // eps, t_end and nr are overwritten per run
  std::vector<double> eps_list;
  std::vector<double> dr_list;    // one per eps, or empty for base.dr()
  double horizon = 2.0;           // t_end = horizon / eps
  double output_dt = 0.005;       // trace sampling (rounded to a step multiple)
  int jobs = 1;
};

/// Weighted time-RMS norm over receivers,
///   sqrt( sum_r w(r) mean_t x_r(t)^2 / sum_r w(r) ),  w(r) = 1 / (1 + r^2).
double receiver_norm(const std::vector<WaveTrace>& traces, const std::vector<double>& radii);
/// max_r w(r) max_t |x_r(t)| / max_r w(r).
double receiver_sup(const std::vector<WaveTrace>& traces, const std::vector<double>& radii);

/// Runs the oracle with and without the bubble for every eps and fits
/// log-log slopes of the remainder, tail and tail-ablated norms. The primary
/// wave is taken from the bubble-free run on the same grid; d_tt v^f at the
/// bubble center comes from the retarded potential. Throws InvalidArgument
/// when grid spacing grows as eps decreases.
SweepReport remainder_sweep(const SweepConfig& config);

}  // namespace minnaert
