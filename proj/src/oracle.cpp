#include "minnaert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minnaert/errors.hpp"
#include "minnaert/parallel.hpp"
#include "minnaert/waves.hpp"

namespace minnaert {

namespace {

bool on_face(double eps, double dr) {
  const double m = eps / dr;
  return std::abs(m - std::round(m)) < 1e-6;
}

std::size_t bubble_cells(const RadialConfig& c) {
  if (!c.bubble) return 0;
  return static_cast<std::size_t>(std::llround(c.medium.eps / c.dr()));
}

}  // namespace

double RadialConfig::dt() const {
  // Bubble-free runs use the same step so the two can be subtracted.
  return cfl * dr() / std::max(medium.c0(), medium.c1());
}

void RadialConfig::set_spacing(double target_dr) {
  if (!(target_dr > 0.0)) throw InvalidArgument("oracle", "grid spacing must be > 0");
  nr = static_cast<std::size_t>(std::ceil(r_max / target_dr - 1e-9));
  r_max = static_cast<double>(nr) * target_dr;
}

void RadialConfig::validate() const {
  medium.validate();
  source.validate();
  if (nr < 8 || !(r_max > 0.0)) throw InvalidArgument("oracle", "need r_max > 0 and at least 8 cells");
  if (!(cfl > 0.0)) throw InvalidArgument("oracle", "cfl must be > 0");
  if (cfl > kMaxCfl) throw StabilityError("oracle", "cfl exceeds the leapfrog stability limit 0.9");
  if (!(t_end > 0.0)) throw InvalidArgument("oracle", "t_end must be > 0");
  if (output_stride == 0) throw InvalidArgument("oracle", "output stride must be >= 1");
  if ((source.center - medium.y0).norm() > 1e-12) {
    throw InvalidArgument("oracle", "radial oracle needs the source centered on the bubble");
  }
  const double eps = bubble ? medium.eps : 0.0;
  if (!(eps < source.space.r_in() && source.space.r_out() < r_max)) {
    throw InvalidArgument("oracle", "need eps < source r_in < source r_out < r_max");
  }
  if (bubble) {
    if (!(medium.eps > 0.0)) throw InvalidArgument("oracle", "bubble run needs eps > 0");
    if (medium.eps / dr() < kMinCellsPerRadius) {
      throw ResolutionError("oracle", "bubble radius spans fewer than 16 cells");
    }
    if (!on_face(medium.eps, dr())) throw ResolutionError("oracle", "bubble radius must fall on a cell face");
  }
  for (double r : receivers) {
    if (!(r >= 0.0) || !(r < r_max - dr())) throw InvalidArgument("oracle", "receiver outside the grid");
  }
}

std::vector<double> face_transmissibility(const RadialConfig& c) {
  const std::size_t n = c.nr;
  const double dr = c.dr();
  const std::size_t nb = bubble_cells(c);
  const double eps2 = c.medium.eps * c.medium.eps;
  auto rho = [&](std::size_t i) { return i < nb ? c.medium.rho1 * eps2 : c.medium.rho0; };
  auto center = [&](std::size_t i) { return (static_cast<double>(i) + 0.5) * dr; };
  std::vector<double> t(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double rf = static_cast<double>(j) * dr;
    const double res = rho(j - 1) * (1.0 / center(j - 1) - 1.0 / rf) + rho(j) * (1.0 / rf - 1.0 / center(j));
    t[j] = 1.0 / res;
  }
  return t;
}

RadialSolution solve_radial(const RadialConfig& c) {
  c.validate();
  const std::size_t n = c.nr;
  const double dr = c.dr();
  const double dt = c.dt();
  const std::size_t nb = bubble_cells(c);
  const double eps2 = c.medium.eps * c.medium.eps;
  const double c0 = c.medium.c0();

  std::vector<double> r(n), coef(n), src(n), kk(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = (static_cast<double>(i) + 0.5) * dr;
    const double lo = static_cast<double>(i) * dr, hi = lo + dr;
    const double vol = (hi * hi * hi - lo * lo * lo) / 3.0;
    kk[i] = i < nb ? c.medium.k1 * eps2 : c.medium.k0;
    coef[i] = dt * dt * kk[i] / vol;
    src[i] = dt * dt * kk[i] * c.source.amplitude * c.source.space(r[i]);
  }
  const std::vector<double> trans = face_transmissibility(c);
  const double alpha = (c0 * dt - dr) / (c0 * dt + dr);

  const auto steps = static_cast<std::size_t>(std::ceil(c.t_end / dt - 1e-9));
  const std::size_t samples = steps / c.output_stride + 1;

  struct Probe {
    std::size_t i;
    double w;
  };
  std::vector<Probe> probes;
  for (double rr : c.receivers) {
    // Between centers i and i+1; below the first center use cell 0.
    const double x = rr / dr - 0.5;
    if (x <= 0.0) {
      probes.push_back({0, 0.0});
      continue;
    }
    const auto i = std::min(static_cast<std::size_t>(x), n - 2);
    probes.push_back({i, x - static_cast<double>(i)});
  }

  RadialSolution out;
  out.dr = dr;
  out.dt = dt;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    out.traces.emplace_back(0.0, dt * static_cast<double>(c.output_stride), std::vector<double>(samples, 0.0));
  }

  std::vector<double> um(n, 0.0), u(n, 0.0), up(n, 0.0), flux(n + 1, 0.0);
  double umax = 0.0;
  for (std::size_t step = 0; step <= steps; ++step) {
    if (step % c.output_stride == 0) {
      const std::size_t s = step / c.output_stride;
      for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& p = probes[k];
        out.traces[k].values[s] = (1.0 - p.w) * u[p.i] + p.w * u[p.i + 1];
      }
    }
    if (step == steps) break;

    const double g = c.source.time.eval(dt * static_cast<double>(step));
    for (std::size_t j = 1; j < n; ++j) flux[j] = trans[j] * (u[j] - u[j - 1]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      up[i] = 2.0 * u[i] - um[i] + coef[i] * (flux[i + 1] - flux[i]) + src[i] * g;
    }
    // Outgoing condition on w = r u.
    const double wn = r[n - 2] * u[n - 2] + alpha * (r[n - 2] * up[n - 2] - r[n - 1] * u[n - 1]);
    up[n - 1] = wn / r[n - 1];

    std::swap(um, u);
    std::swap(u, up);
    for (double v : u) umax = std::max(umax, std::abs(v));
    if (!std::isfinite(umax)) throw NumericalFailure("oracle", "radial solver produced non-finite values");
  }
  out.max_abs = umax;
  return out;
}

double receiver_norm(const std::vector<WaveTrace>& traces, const std::vector<double>& radii) {
  if (traces.size() != radii.size() || traces.empty()) {
    throw InvalidArgument("oracle", "need one trace per receiver radius");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const double w = 1.0 / (1.0 + radii[k] * radii[k]);
    double ms = 0.0;
    for (double v : traces[k].values) ms += v * v;
    ms /= static_cast<double>(std::max<std::size_t>(1, traces[k].size()));
    num += w * ms;
    den += w;
  }
  return std::sqrt(num / den);
}

double receiver_sup(const std::vector<WaveTrace>& traces, const std::vector<double>& radii) {
  if (traces.size() != radii.size() || traces.empty()) {
    throw InvalidArgument("oracle", "need one trace per receiver radius");
  }
  double m = 0.0, wmax = 0.0;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const double w = 1.0 / (1.0 + radii[k] * radii[k]);
    m = std::max(m, w * traces[k].max_abs());
    wmax = std::max(wmax, w);
  }
  return m / wmax;
}

SweepReport remainder_sweep(const SweepConfig& cfg) {
  const std::size_t ne = cfg.eps_list.size();
  if (ne < 3) throw InvalidArgument("oracle", "remainder sweep needs at least 3 eps values");
  if (!cfg.dr_list.empty() && cfg.dr_list.size() != ne) {
    throw InvalidArgument("oracle", "dr list must match the eps list");
  }
  if (!(cfg.horizon > 0.0) || !(cfg.output_dt > 0.0)) {
    throw InvalidArgument("oracle", "horizon and output_dt must be > 0");
  }
  if (cfg.base.receivers.empty()) throw InvalidArgument("oracle", "sweep needs receivers");

  std::vector<double> drs(ne);
  for (std::size_t k = 0; k < ne; ++k) drs[k] = cfg.dr_list.empty() ? cfg.base.dr() : cfg.dr_list[k];
  std::vector<std::size_t> order(ne);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cfg.eps_list[a] > cfg.eps_list[b]; });
  for (std::size_t k = 1; k < ne; ++k) {
    if (drs[order[k]] > drs[order[k - 1]] * (1.0 + 1e-12)) {
      throw InvalidArgument("oracle", "grid spacing must not grow as eps decreases");
    }
  }

  // Validate everything before any run starts.
  std::vector<RadialConfig> runs;
  for (std::size_t k = 0; k < ne; ++k) {
    RadialConfig rc = cfg.base;
    rc.medium.eps = cfg.eps_list[k];
    rc.t_end = cfg.horizon / cfg.eps_list[k];
    rc.set_spacing(drs[k]);
    rc.output_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cfg.output_dt / rc.dt() + 1e-9)));
    rc.bubble = true;
    rc.validate();
    runs.push_back(rc);
    rc.bubble = false;
    rc.validate();
    runs.push_back(rc);
  }

  std::vector<RadialSolution> sols(runs.size());
  parallel_for(runs.size(), cfg.jobs, [&](std::size_t i) { sols[i] = solve_radial(runs[i]); });

  SweepReport rep;
  const auto& radii = cfg.base.receivers;
  std::vector<double> eps, rem, rem_sup, tail, abl;
  for (std::size_t k = 0; k < ne; ++k) {
    const RadialConfig& rc = runs[2 * k];
    const auto& u = sols[2 * k].traces;
    const auto& v = sols[2 * k + 1].traces;
    const BubbleModel bubble = make_sphere_bubble(rc.medium);
    const WaveTrace vtt = primary_second_deriv_trace(rc.source, rc.medium, rc.medium.y0, u.front().grid());

    std::vector<WaveTrace> r_rem, r_tail, r_abl;
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const Vec3 x = rc.medium.y0 + Vec3(radii[j], 0.0, 0.0);
      WaveTrace t = resonant_tail_closed(vtt, bubble, x);
      WaveTrace scat = u[j] - v[j];
      r_rem.push_back(scat - t);
      r_abl.push_back(scat);
      r_tail.push_back(std::move(t));
    }
    SweepPoint p;
    p.eps = rc.medium.eps;
    p.dr = rc.dr();
    p.t_end = rc.t_end;
    p.remainder = receiver_norm(r_rem, radii);
    p.remainder_sup = receiver_sup(r_rem, radii);
    p.tail = receiver_norm(r_tail, radii);
    p.ablated = receiver_norm(r_abl, radii);
    rep.points.push_back(p);
    eps.push_back(p.eps);
    rem.push_back(p.remainder);
    rem_sup.push_back(p.remainder_sup);
    tail.push_back(p.tail);
    abl.push_back(p.ablated);
  }
  rep.remainder_slope = loglog_slope(eps, rem);
  rep.remainder_sup_slope = loglog_slope(eps, rem_sup);
  rep.tail_slope = loglog_slope(eps, tail);
  rep.ablated_slope = loglog_slope(eps, abl);
  return rep;
}

}  // namespace minnaert
