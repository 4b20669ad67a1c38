// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "minnaert/errors.hpp"
#include "minnaert/features.hpp"
#include "minnaert/layerpot.hpp"
#include "minnaert/oracle.hpp"
#include "minnaert/resonance.hpp"
#include "minnaert/scenarios.hpp"
#include "minnaert/waves.hpp"

using namespace minnaert;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

MediumParams sphere_medium(double eps) {
  MediumParams m;
  m.eps = eps;
  return m;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

struct Level {
  MeshPtr mesh;
  Equilibrium eq;
};

const Level& unit_sphere(int level) {
  static std::map<int, Level> cache;
  auto it = cache.find(level);
  if (it == cache.end()) {
    auto mesh = std::make_shared<const SurfaceMesh>(make_sphere_mesh(1.0, level));
    it = cache.emplace(level, Level{mesh, solve_equilibrium(mesh)}).first;
  }
  return it->second;
}

Outcome capacitance_criterion() {
  std::vector<double> h, err;
  for (int level = 2; level <= 4; ++level) {
    const Level& l = unit_sphere(level);
    h.push_back(l.mesh->max_edge());
    err.push_back(std::abs(l.eq.capacitance - 4.0 * kPi));
  }
  const double c3 = unit_sphere(3).eq.capacitance;
  const double order = loglog_slope(h, err);
  return {rel(c3, 4.0 * kPi) <= 0.01 && order >= 1.0,
          fmt("C(level 3) = %.6f (rel err %.3g, tol 1e-2); order over levels 2-4 = %.2f (>= 1)", c3,
              rel(c3, 4.0 * kPi), order)};
}

Outcome null_identity_criterion() {
  std::vector<double> res;
  for (int level = 2; level <= 4; ++level) {
    const Level& l = unit_sphere(level);
    res.push_back(null_identity_residual(assemble_np_adjoint(l.mesh, 0), l.eq.phi));
  }
  const bool decreasing = res[1] < res[0] && res[2] < res[1];
  return {res[1] <= 0.03 && decreasing,
          fmt("residual levels 2,3,4 = %.4f, %.4f, %.4f (level 3 <= 0.03, decreasing)", res[0], res[1], res[2])};
}

Outcome identities_criterion() {
  const Level& l = unit_sphere(3);
  const IdentityResiduals r = geometric_identities_report(*l.mesh, l.eq.phi);
  const double vol = 4.0 * kPi / 3.0, mom = 3.0 * (4.0 * kPi) * vol;
  const double ev = rel(r.volume_integral, vol), em = rel(r.moment_integral, mom);
  return {ev <= 0.02 && em <= 0.02,
          fmt("volume identity %.6f vs %.6f (rel %.3g); moment identity %.4f vs %.4f (rel %.3g); tol 2e-2",
              r.volume_integral, vol, ev, r.moment_integral, mom, em)};
}

Outcome minnaert_criterion() {
  double worst = 0.0;
  for (double eps : {0.0025, 0.01, 0.05, 0.1}) {
    const ResonanceSpec r = make_resonance(4.0 * kPi, 4.0 * kPi / 3.0, sphere_medium(eps));
    worst = std::max({worst, rel(r.omega_M, std::sqrt(3.0)), rel(r.z_plus.real(), std::sqrt(3.0)),
                      rel(r.z_minus.real(), -std::sqrt(3.0)), rel(r.z_plus.imag(), -1.5 * eps),
                      rel(r.z_minus.imag(), -1.5 * eps), rel(r.lifetime, 1.0 / (1.5 * eps))});
  }
  return {worst <= 4.0 * std::numeric_limits<double>::epsilon(),
          fmt("max relative deviation over eps in {0.0025,0.01,0.05,0.1}: %.3g", worst)};
}

double gaussian_pulse(double t) { return std::exp(-std::pow((t - 3.0) / 0.5, 2)); }

Outcome ode_criterion() {
  const double a1 = 0.2, a2 = 4.0, dt = 1e-3;
  const std::size_t n = 15001;
  const WaveTrace h = duhamel_solve(a1, a2, WaveTrace::sample({0.0, dt, n}, gaussian_pulse));
  // Classical RK4 on the first-order system.
  double y = 0.0, v = 0.0, t = 0.0, gap = 0.0;
  auto acc = [&](double tt, double yy, double vv) { return gaussian_pulse(tt) - a1 * vv - a2 * yy; };
  for (std::size_t i = 1; i < n; ++i) {
    const double k1y = v, k1v = acc(t, y, v);
    const double k2y = v + 0.5 * dt * k1v, k2v = acc(t + 0.5 * dt, y + 0.5 * dt * k1y, v + 0.5 * dt * k1v);
    const double k3y = v + 0.5 * dt * k2v, k3v = acc(t + 0.5 * dt, y + 0.5 * dt * k2y, v + 0.5 * dt * k2v);
    const double k4y = v + dt * k3v, k4v = acc(t + dt, y + dt * k3y, v + dt * k3v);
    y += dt / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += dt;
    gap = std::max(gap, std::abs(h.values[i] - y));
  }
  std::vector<double> dts = {0.02, 0.01, 0.005}, res;
  for (double d : dts) {
    const auto m = static_cast<std::size_t>(std::llround(12.0 / d)) + 1;
    const WaveTrace f = WaveTrace::sample({0.0, d, m}, gaussian_pulse);
    const WaveTrace s = duhamel_solve(a1, a2, f);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const double spp = (s.values[i + 1] - 2 * s.values[i] + s.values[i - 1]) / (d * d);
      const double sp = (s.values[i + 1] - s.values[i - 1]) / (2 * d);
      worst = std::max(worst, std::abs(spp + a1 * sp + a2 * s.values[i] - f.values[i]));
    }
    res.push_back(worst);
  }
  const double slope = loglog_slope(dts, res);
  return {gap <= 1e-6 && slope >= 1.8,
          fmt("sup |Duhamel - RK4| = %.3g (<= 1e-6); FD residual slope = %.2f (second order, >= 1.8)", gap, slope)};
}

Outcome pole_criterion() {
  const double w = std::sqrt(3.0), c = 4.0 * kPi;
  const EtaCoefficients eta = sphere_eta(1.0, 1.0);
  std::vector<PoleSample> sweep;
  for (double e : {0.02, 0.01, 0.005, 0.0025}) {
    sweep.push_back({e, reduced_roots(1, gamma_eps(sphere_medium(e), w), eta)});
  }
  const PoleFit fit = pole_asymptotics_check(sweep, w, c, 1.0);
  return {fit.real_slope >= 3.5 && fit.imag_slope >= 2.5,
          fmt("real-part residual slope %.3f (>= 3.5), imaginary-part residual slope %.3f (>= 2.5)", fit.real_slope,
              fit.imag_slope)};
}

SourceSpec short_pulse() {
  SourceSpec s;
  s.time = TimeProfile::bump(0.0, 1.0);
  return s;
}

Outcome exact_form_criterion() {
  double worst = 0.0, imag = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const BubbleModel b = make_sphere_bubble(sphere_medium(eps));
    const TimeGrid grid{0.0, 0.005, 8001};
    for (const Vec3& x : {Vec3(1.5, 0, 0), Vec3(0, 2.0, 1.0), Vec3(-3.0, 0, 0)}) {
      const ExpansionResult e = dominant_expansion(short_pulse(), b, x, grid);
      const WaveTrace closed = resonant_tail_closed(short_pulse(), b, x, grid);
      worst = std::max(worst, sup_distance(e.tail, closed) / closed.max_abs());
      imag = std::max(imag, e.imag_residue);
    }
  }
  return {worst <= 1e-12 && imag <= 1e-12,
          fmt("max samplewise |complex - closed| / max|tail| = %.3g (<= 1e-12); imaginary residue %.3g", worst, imag)};
}

Outcome consistency_criterion() {
  std::string detail;
  bool ok = true;
  for (double eps : {0.1, 0.05}) {
    const MediumParams m = sphere_medium(eps);
    const BubbleModel b = make_sphere_bubble(m);
    const TimeGrid grid{0.0, 0.005, 8001};
    const WaveTrace f = modulation_forcing(short_pulse(), m, b.resonance.omega_M, b.volume, grid);
    const WaveTrace a = solve_modulation(f, m, b.resonance.omega_M, b.capacitance);
    double worst = 0.0;
    for (double r : {1.5, 2.0, 3.0}) {
      const Vec3 x(r, 0, 0);
      const WaveTrace closed = resonant_tail_closed(short_pulse(), b, x, grid);
      worst = std::max(worst, sup_distance(tail_from_modulation(a, b, x), closed) / closed.max_abs());
    }
    ok = ok && worst <= 5.0 * eps;
    detail += fmt("eps=%.2f: rel sup %.4f (<= %.2f)  ", eps, worst, 5.0 * eps);
  }
  return {ok, detail};
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome sweep_criterion() {
  SweepConfig s;
  s.base.source = short_pulse();
  s.base.r_max = 4.0;
  s.base.receivers = {1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
  s.eps_list = {0.2, 0.1, 0.05};
  s.dr_list = {0.05 / 32, 0.05 / 32, 0.05 / 32};
  s.horizon = 2.0;
  s.jobs = static_cast<int>(worker_count());
  const SweepReport r = remainder_sweep(s);
  std::string pts;
  for (const auto& p : r.points) pts += fmt("E(%.2f)=%.3g ", p.eps, p.remainder);
  const bool ok = r.remainder_slope >= 1.4 && std::abs(r.ablated_slope - 1.0) <= 0.2;
  return {ok, fmt("remainder slope %.3f (>= 1.4), tail-ablated slope %.3f (~1), tail slope %.3f, sup-norm slope %.3f; ",
                  r.remainder_slope, r.ablated_slope, r.tail_slope, r.remainder_sup_slope) +
                  pts};
}

Outcome signature_criterion() {
  const double eps = 0.05, r_near = 0.1, r_far = 2.0;
  RadialConfig c;
  c.medium = sphere_medium(eps);
  c.source = short_pulse();
  c.r_max = 4.0;
  c.set_spacing(eps / 32.0);
  c.t_end = 40.0;
  c.receivers = {r_near, r_far};
  c.output_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(0.005 / c.dt() + 1e-9)));
  RadialConfig dry_cfg = c;
  dry_cfg.bubble = false;
  RadialSolution wet, dry;
  std::thread th([&] { dry = solve_radial(dry_cfg); });
  wet = solve_radial(c);
  th.join();
  const WaveTrace near = wet.traces[0] - dry.traces[0];
  const WaveTrace far = wet.traces[1] - dry.traces[1];

  const double c0 = c.medium.c0();
  const DifferentialBirth birth = differential_birth_time(near, r_near, far, r_far);
  const FeatureReport rep = analyze(far, {r_far / c0 + 3.0, far.time(far.size() - 1)}, 0.01, birth.birth_time);
  if (!rep.ringing) return {false, "no ringing detected: " + rep.diagnostic};
  const BubbleModel b = make_sphere_bubble(c.medium);
  const BackgroundEstimate inv = invert_background(rep, {b.capacitance, b.volume, c.medium.k1, r_far});

  const double period_err = rel(rep.period, 2.0 * kPi / std::sqrt(3.0));
  const double decay_err = rel(rep.decay_rate, 1.5 * eps);
  const double birth_cells = std::abs(rep.birth_time - r_far / c0) / (wet.dr / c0);
  const double rho_err = rel(inv.rho0_hat, c.medium.rho0), c0_err = rel(inv.c0_hat, c0);
  const bool ok = period_err <= 0.03 && decay_err <= 0.10 && birth_cells <= 2.0 && rho_err <= 0.05 && c0_err <= 0.02;
  return {ok, fmt("period err %.4f (<= 0.03), decay err %.4f (<= 0.10), birth off by %.2f cells (<= 2), "
                  "rho0 err %.4f (<= 0.05), c0 err %.5f (<= 0.02)",
                  period_err, decay_err, birth_cells, rho_err, c0_err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"capacitance", capacitance_criterion},
      {"null identity", null_identity_criterion},
      {"geometric identities", identities_criterion},
      {"Minnaert constants", minnaert_criterion},
      {"ODE layer", ode_criterion},
      {"pole asymptotics", pole_criterion},
      {"exact form equivalence", exact_form_criterion},
      {"ODE/tail consistency", consistency_criterion},
      {"remainder scaling", sweep_criterion},
      {"signatures", signature_criterion},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s  %2zu %-24s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
