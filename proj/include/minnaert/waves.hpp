#pragma once

#include "minnaert/resonance.hpp"
#include "minnaert/sources.hpp"
#include "minnaert/trace.hpp"

namespace minnaert {

/// Static bubble data the time-domain expansion needs.
struct BubbleModel {
  MediumParams medium;
  double capacitance = 0.0;  // C of the reference shape
  double volume = 0.0;       // |Omega| of the reference shape
  ResonanceSpec resonance;
};

BubbleModel make_bubble(double capacitance, double volume, const MediumParams& medium);

/// Unit ball reference shape: C = 4 pi, |Omega| = 4 pi / 3.
BubbleModel make_sphere_bubble(const MediumParams& medium);

/// -(eps omega_M^2 |Omega| / k1) d_tt v^f(y0, t) on the grid.
WaveTrace modulation_forcing(const SourceSpec& spec, const MediumParams& medium, double omega_M, double volume,
                             const TimeGrid& grid);

/// Coefficient a(t) of
///   a'' + eps C omega^2/(4 pi c0) a' + (omega^2 + eps^2 C^2 omega^4/(4 pi^2 c0^2)) a = forcing,
/// a(0) = a'(0) = 0.
WaveTrace solve_modulation(const WaveTrace& forcing, const MediumParams& medium, double omega_M, double capacitance);

/// Damping and stiffness of the modulation equation.
std::pair<double, double> modulation_coefficients(const MediumParams& medium, double omega_M, double capacitance);

/// Resonant wave at x in sin * exp form,
///   -(eps omega rho0 |Omega|)/(4 pi k1 r) int_0^{t - r/c0} sin(omega s) e^{-delta s} d_tt v^f(y0, t - r/c0 - s) ds,
/// r = |x - y0|. The convolution runs on the grid with d_tt v^f delayed by
/// linear interpolation. The grid must start before the source switches on.
/// Throws SingularReceiverError for x = y0.
WaveTrace resonant_tail_closed(const SourceSpec& spec, const BubbleModel& bubble, const Vec3& x, const TimeGrid& grid);

/// Same, from an already sampled d_tt v^f(y0, .) on the output grid.
WaveTrace resonant_tail_closed(const WaveTrace& vf_tt_y0, const BubbleModel& bubble, const Vec3& x);

/// rho0 a(t - r/c0) / (4 pi r): the tail as carried by the modulation ODE.
WaveTrace tail_from_modulation(const WaveTrace& a, const BubbleModel& bubble, const Vec3& x);

struct ExpansionResult {
  WaveTrace primary;
  WaveTrace tail;
  WaveTrace total;
  ResonanceSpec resonance;
  Vec3 receiver = Vec3::Zero();
  double imag_residue = 0.0;  // max |Im tail| / max |Re tail|
};

/// Primary wave plus the resonant tail in complex-exponential form,
///   (i omega rho0 |Omega| eps)/(8 pi k1 r)
///     int_0^{t - r/c0} (e^{-i z-(t - r/c0 - tau)} - e^{-i z+(t - r/c0 - tau)}) d_tt v^f(y0, tau) dtau.
/// total = primary + Re(tail).
ExpansionResult dominant_expansion(const SourceSpec& spec, const BubbleModel& bubble, const Vec3& x,
                                   const TimeGrid& grid);

}  // namespace minnaert
