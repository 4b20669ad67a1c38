#pragma once

#include <optional>

#include "minnaert/trace.hpp"

namespace minnaert {

struct TimeWindow {
  double t_a = 0.0;
  double t_b = 0.0;
};

/// First time |trace| reaches threshold_fraction * max|trace|, linearly
/// interpolated between samples. Throws NoSignalError for an all-zero trace.
double detect_birth_time(const WaveTrace& trace, double threshold_fraction);

/// Zero-crossing times inside the window, linearly interpolated.
std::vector<double> zero_crossings(const WaveTrace& trace, TimeWindow window);

/// Twice the mean spacing of successive zero crossings in the window.
/// Throws InsufficientRingingError with fewer than 4 crossings.
double estimate_period(const WaveTrace& trace, TimeWindow window);

struct Extremum {
  double t = 0.0;
  double value = 0.0;
};

/// Local extrema in the window, refined by a parabola through three samples.
std::vector<Extremum> local_extrema(const WaveTrace& trace, TimeWindow window);

struct DecayFit {
  double rate = 0.0;
  double log_residual = 0.0;  // RMS misfit of log|extrema|
  std::size_t extrema = 0;
};

/// Negated least-squares slope of log|extrema| against time. Throws FitError
/// with fewer than 4 extrema or when the envelope grows faster than
/// 1e-3 times the ringing frequency.
DecayFit fit_decay(const WaveTrace& trace, TimeWindow window);
double estimate_decay_rate(const WaveTrace& trace, TimeWindow window);

struct FeatureReport {
  double birth_time = 0.0;
  double period = 0.0;
  double decay_rate = 0.0;
  double lifetime = 0.0;  // 1 / decay_rate
  bool ringing = false;
  std::size_t crossings = 0;
  std::size_t extrema = 0;
  double decay_log_residual = 0.0;
  std::string diagnostic;  // why ringing was not detected
};

/// Birth time from the whole trace, period and decay from the window. A
/// record without enough ringing gives ringing = false instead of throwing.
FeatureReport analyze(const WaveTrace& trace, TimeWindow window, double threshold_fraction = 0.01,
                      std::optional<double> birth_time = std::nullopt);

/// Birth time of an outgoing wave at r_far from its onset delay relative to a
/// receiver at r_near on the same ray: for a field W(t - r/c0)/r the delay is
/// (r_far - r_near)/c0 whatever the shape of W.
struct DifferentialBirth {
  double delay = 0.0;       // onset(r_far) - onset(r_near)
  double birth_time = 0.0;  // r_far * delay / (r_far - r_near)
  double speed = 0.0;       // (r_far - r_near) / delay
};

DifferentialBirth differential_birth_time(const WaveTrace& near, double r_near, const WaveTrace& far, double r_far,
                                          double threshold_fraction = 0.01);

struct KnownBubble {
  double capacitance = 0.0;
  double volume = 0.0;
  double k1 = 0.0;
  double distance = 0.0;  // bubble to receiver
};

struct BackgroundEstimate {
  double c0_hat = 0.0;
  double omega_hat = 0.0;
  double rho0_hat = 0.0;
};

/// c0 = distance / birth_time, omega = 2 pi / period,
/// rho0 = C k1 / (|Omega| omega^2).
BackgroundEstimate invert_background(const FeatureReport& report, const KnownBubble& known);

}  // namespace minnaert
