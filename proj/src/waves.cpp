#include "minnaert/waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

constexpr double kPi = std::numbers::pi;

double receiver_distance(const BubbleModel& bubble, const Vec3& x) {
  const double r = (x - bubble.medium.y0).norm();
  if (!(r > 1e-12 * std::max(1.0, x.norm()))) {
    throw SingularReceiverError("waves", "receiver coincides with the bubble center");
  }
  return r;
}

void check_grid_start(const SourceSpec& spec, const TimeGrid& grid) {
  grid.validate();
  if (grid.t_start > spec.time.t0()) {
    throw InvalidArgument("waves", "time grid must start before the source switches on");
  }
}

}  // namespace

BubbleModel make_bubble(double capacitance, double volume, const MediumParams& medium) {
  BubbleModel b;
  b.medium = medium;
  b.capacitance = capacitance;
  b.volume = volume;
  b.resonance = make_resonance(capacitance, volume, medium);
  return b;
}

BubbleModel make_sphere_bubble(const MediumParams& medium) {
  return make_bubble(4.0 * kPi, 4.0 * kPi / 3.0, medium);
}

WaveTrace modulation_forcing(const SourceSpec& spec, const MediumParams& medium, double omega_M, double volume,
                             const TimeGrid& grid) {
  check_grid_start(spec, grid);
  WaveTrace f = primary_second_deriv_trace(spec, medium, medium.y0, grid);
  f *= -medium.eps * omega_M * omega_M * volume / medium.k1;
  return f;
}

std::pair<double, double> modulation_coefficients(const MediumParams& medium, double omega_M, double capacitance) {
  const double c0 = medium.c0();
  const double w2 = omega_M * omega_M;
  const double a1 = medium.eps * capacitance * w2 / (4.0 * kPi * c0);
  const double a2 = w2 + medium.eps * medium.eps * capacitance * capacitance * w2 * w2 / (4.0 * kPi * kPi * c0 * c0);
  return {a1, a2};
}

WaveTrace solve_modulation(const WaveTrace& forcing, const MediumParams& medium, double omega_M, double capacitance) {
  const auto [a1, a2] = modulation_coefficients(medium, omega_M, capacitance);
  return duhamel_solve(a1, a2, forcing);
}

WaveTrace resonant_tail_closed(const WaveTrace& vf_tt_y0, const BubbleModel& bubble, const Vec3& x) {
  vf_tt_y0.validate("waves");
  const MediumParams& m = bubble.medium;
  const double r = receiver_distance(bubble, x);
  const double omega = bubble.resonance.omega_M;
  const WaveTrace g = delayed(vf_tt_y0, r / m.c0());
  auto q = damped_sine_convolution(g.values, g.dt, omega, bubble.resonance.delta);
  const double pref = -(m.eps * omega * m.rho0 * bubble.volume) / (4.0 * kPi * m.k1 * r);
  for (double& v : q) v *= pref;
  return WaveTrace(g.t_start, g.dt, std::move(q));
}

WaveTrace resonant_tail_closed(const SourceSpec& spec, const BubbleModel& bubble, const Vec3& x,
                               const TimeGrid& grid) {
  receiver_distance(bubble, x);
  check_grid_start(spec, grid);
  return resonant_tail_closed(primary_second_deriv_trace(spec, bubble.medium, bubble.medium.y0, grid), bubble, x);
}

WaveTrace tail_from_modulation(const WaveTrace& a, const BubbleModel& bubble, const Vec3& x) {
  const double r = receiver_distance(bubble, x);
  WaveTrace out = delayed(a, r / bubble.medium.c0());
  out *= bubble.medium.rho0 / (4.0 * kPi * r);
  return out;
}

ExpansionResult dominant_expansion(const SourceSpec& spec, const BubbleModel& bubble, const Vec3& x,
                                   const TimeGrid& grid) {
  const MediumParams& m = bubble.medium;
  const double r = receiver_distance(bubble, x);
  check_grid_start(spec, grid);

  ExpansionResult res;
  res.resonance = bubble.resonance;
  res.receiver = x;
  res.primary = primary_trace(spec, m, x, grid);

  const WaveTrace g = delayed(primary_second_deriv_trace(spec, m, m.y0, grid), r / m.c0());
  const cplx I(0.0, 1.0);
  const auto qp = exponential_convolution(g.values, g.dt, -I * bubble.resonance.z_plus);
  const auto qm = exponential_convolution(g.values, g.dt, -I * bubble.resonance.z_minus);
  const cplx pref = I * bubble.resonance.omega_M * m.rho0 * bubble.volume * m.eps / (8.0 * kPi * m.k1 * r);

  std::vector<double> re(grid.count);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t n = 0; n < grid.count; ++n) {
    const cplx v = pref * (qm[n] - qp[n]);
    re[n] = v.real();
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  res.imag_residue = max_re > 0.0 ? max_im / max_re : max_im;
  res.tail = WaveTrace(grid, std::move(re));
  res.total = res.primary + res.tail;
  return res;
}

}  // namespace minnaert
