#include "minnaert/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

// Sample index range [lo, hi] inside the window.
std::pair<std::size_t, std::size_t> window_indices(const WaveTrace& tr, TimeWindow w) {
  if (!(w.t_b > w.t_a)) throw InvalidArgument("features", "analysis window needs t_b > t_a");
  if (tr.size() < 3) throw InvalidArgument("features", "trace too short");
  const double n = static_cast<double>(tr.size() - 1);
  const double a = std::clamp(std::ceil((w.t_a - tr.t_start) / tr.dt - 1e-9), 0.0, n);
  const double b = std::clamp(std::floor((w.t_b - tr.t_start) / tr.dt + 1e-9), 0.0, n);
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

}  // namespace

double detect_birth_time(const WaveTrace& trace, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw InvalidArgument("features", "threshold fraction must be in (0, 1)");
  }
  trace.validate("features");
  const double peak = trace.max_abs();
  if (!(peak > 0.0)) throw NoSignalError("features", "trace is identically zero");
  const double level = threshold_fraction * peak;
  const auto& v = trace.values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a < level) continue;
    if (i == 0) return trace.time(0);
    const double b = std::abs(v[i - 1]);
    return trace.time(i - 1) + trace.dt * (level - b) / (a - b);
  }
  return trace.time(v.size() - 1);
}

std::vector<double> zero_crossings(const WaveTrace& trace, TimeWindow window) {
  const auto [lo, hi] = window_indices(trace, window);
  std::vector<double> out;
  const auto& v = trace.values;
  std::size_t prev = hi + 1;  // last nonzero sample
  for (std::size_t i = lo; i <= hi; ++i) {
    if (v[i] == 0.0) continue;
    if (prev <= hi && (v[prev] > 0.0) != (v[i] > 0.0)) {
      const double f = v[prev] / (v[prev] - v[i]);
      out.push_back(trace.time(prev) + f * (trace.time(i) - trace.time(prev)));
    }
    prev = i;
  }
  return out;
}

double estimate_period(const WaveTrace& trace, TimeWindow window) {
  trace.validate("features");
  const auto z = zero_crossings(trace, window);
  if (z.size() < 4) {
    throw InsufficientRingingError("features", "window holds " + std::to_string(z.size()) +
                                                   " zero crossings, need at least 4");
  }
  return 2.0 * (z.back() - z.front()) / static_cast<double>(z.size() - 1);
}

std::vector<Extremum> local_extrema(const WaveTrace& trace, TimeWindow window) {
  auto [lo, hi] = window_indices(trace, window);
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min(hi, trace.size() - 2);
  std::vector<Extremum> out;
  const auto& v = trace.values;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double dl = v[i] - v[i - 1], dr = v[i + 1] - v[i];
    if (!(dl * dr < 0.0)) continue;
    const double den = v[i - 1] - 2.0 * v[i] + v[i + 1];
    double p = 0.0;
    if (den != 0.0) p = std::clamp(0.5 * (v[i - 1] - v[i + 1]) / den, -0.5, 0.5);
    out.push_back({trace.time(i) + p * trace.dt, v[i] - 0.25 * (v[i - 1] - v[i + 1]) * p});
  }
  return out;
}

DecayFit fit_decay(const WaveTrace& trace, TimeWindow window) {
  trace.validate("features");
  std::vector<Extremum> ex;
  for (const auto& e : local_extrema(trace, window)) {
    if (e.value != 0.0) ex.push_back(e);
  }
  if (ex.size() < 4) {
    throw FitError("features", "window holds " + std::to_string(ex.size()) + " extrema, need at least 4");
  }
  const double n = static_cast<double>(ex.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& e : ex) {
    const double y = std::log(std::abs(e.value));
    st += e.t;
    sy += y;
    stt += e.t * e.t;
    sty += e.t * y;
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double icpt = (sy - slope * st) / n;
  double ss = 0.0;
  for (const auto& e : ex) {
    const double r = std::log(std::abs(e.value)) - (icpt + slope * e.t);
    ss += r * r;
  }
  // Extrema come every half period.
  const double omega = std::numbers::pi * (n - 1.0) / (ex.back().t - ex.front().t);
  DecayFit fit{-slope, std::sqrt(ss / n), ex.size()};
  if (fit.rate < -1e-3 * omega) {
    throw FitError("features", "extrema envelope grows (rate " + std::to_string(fit.rate) + ")");
  }
  return fit;
}

double estimate_decay_rate(const WaveTrace& trace, TimeWindow window) { return fit_decay(trace, window).rate; }

FeatureReport analyze(const WaveTrace& trace, TimeWindow window, double threshold_fraction,
                      std::optional<double> birth_time) {
  FeatureReport rep;
  rep.birth_time = birth_time ? *birth_time : detect_birth_time(trace, threshold_fraction);
  try {
    rep.crossings = zero_crossings(trace, window).size();
    rep.period = estimate_period(trace, window);
    const DecayFit fit = fit_decay(trace, window);
    rep.extrema = fit.extrema;
    rep.decay_log_residual = fit.log_residual;
    if (!(fit.rate > 0.0)) throw FitError("features", "envelope does not decay");
    rep.decay_rate = fit.rate;
    rep.lifetime = 1.0 / fit.rate;
    rep.ringing = true;
  } catch (const InsufficientRingingError& e) {
    rep.diagnostic = e.what();
  } catch (const FitError& e) {
    rep.diagnostic = e.what();
  }
  if (!rep.ringing) {
    rep.period = rep.decay_rate = rep.lifetime = 0.0;
  }
  return rep;
}

DifferentialBirth differential_birth_time(const WaveTrace& near, double r_near, const WaveTrace& far, double r_far,
                                          double threshold_fraction) {
  if (!(r_far > r_near) || !(r_near > 0.0)) throw InvalidArgument("features", "need 0 < r_near < r_far");
  DifferentialBirth d;
  d.delay = detect_birth_time(far, threshold_fraction) - detect_birth_time(near, threshold_fraction);
  if (!(d.delay > 0.0)) throw InvalidArgument("features", "far receiver does not lag the near receiver");
  d.speed = (r_far - r_near) / d.delay;
  d.birth_time = r_far * d.delay / (r_far - r_near);
  return d;
}

BackgroundEstimate invert_background(const FeatureReport& report, const KnownBubble& known) {
  if (!report.ringing) throw InvalidArgument("features", "inversion needs a ringing record");
  if (!(report.birth_time > 0.0)) throw InvalidArgument("features", "birth time must be > 0");
  if (!(known.distance > 0.0)) throw InvalidArgument("features", "distance must be > 0");
  if (!(report.period > 0.0) || !(known.capacitance > 0.0) || !(known.volume > 0.0) || !(known.k1 > 0.0)) {
    throw InvalidArgument("features", "inversion needs positive period, C, |Omega| and k1");
  }
  BackgroundEstimate b;
  b.c0_hat = known.distance / report.birth_time;
  b.omega_hat = 2.0 * std::numbers::pi / report.period;
  b.rho0_hat = known.capacitance * known.k1 / (known.volume * b.omega_hat * b.omega_hat);
  return b;
}

}  // namespace minnaert
