#pragma once

#include "minnaert/geometry.hpp"
#include "minnaert/profiles.hpp"
#include "minnaert/resonance.hpp"
#include "minnaert/trace.hpp"

namespace minnaert {

/// Separable source f(x, t) = amplitude * space(|x - center|) * time(t).
struct SourceSpec {
  double amplitude = 1.0;
  Vec3 center = Vec3::Zero();
  SpaceProfile space{0.5, 1.0};
  TimeProfile time = TimeProfile::bump(0.0, 1.0);

  void validate() const;
};

/// amplitude * space(|x - center|) * d^order/dt^order time(t), order in 0..3.
double eval_source(const SourceSpec& spec, const Vec3& x, double t, int dt_order = 0);

/// Gauss-Legendre nodes per radial sub-interval used by primary_wave. The
/// integrand is polynomial on every sub-interval, so 10 nodes already
/// integrate it exactly; 4 is the accepted floor.
struct PrimaryQuadrature {
  int nodes = 12;
  static constexpr int kMinNodes = 4;
};

/// Retarded volume potential
///   rho0 int (d_t^order f)(y, t - |x-y|/c0) / (4 pi |x-y|) dy,  order in 0..2.
/// The spherical-shell angular integral about the source center is done in
/// closed form through the time profile's antiderivative; the radial integral
/// by Gauss-Legendre split at every kink of the integrand.
double primary_wave(const SourceSpec& spec, const MediumParams& medium, const Vec3& x, double t, int dt_order = 0,
                    PrimaryQuadrature quad = {});

/// Samples primary_wave(..., order) at x on the grid.
WaveTrace primary_trace(const SourceSpec& spec, const MediumParams& medium, const Vec3& x, const TimeGrid& grid,
                        int dt_order = 0, PrimaryQuadrature quad = {});

/// d_tt v^f(y0, t) on the grid.
WaveTrace primary_second_deriv_trace(const SourceSpec& spec, const MediumParams& medium, const Vec3& y0,
                                     const TimeGrid& grid, PrimaryQuadrature quad = {});

/// Earliest time at which primary_wave at x can be non-zero.
double first_arrival(const SourceSpec& spec, const MediumParams& medium, const Vec3& x);

}  // namespace minnaert
