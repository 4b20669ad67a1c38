#include "minnaert/sources.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

GaussRule compute_gauss_legendre(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    g.x[i] = z;
    g.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return g;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace

void SourceSpec::validate() const {
  if (!std::isfinite(amplitude)) throw InvalidArgument("sources", "amplitude must be finite");
  if (!center.allFinite()) throw InvalidArgument("sources", "source center must be finite");
}

double eval_source(const SourceSpec& spec, const Vec3& x, double t, int dt_order) {
  if (dt_order < 0 || dt_order > 3) throw InvalidArgument("sources", "dt_order must be in 0..3");
  const double s = spec.space((x - spec.center).norm());
  if (s == 0.0) return 0.0;
  return spec.amplitude * s * spec.time.eval(t, dt_order);
}

double first_arrival(const SourceSpec& spec, const MediumParams& medium, const Vec3& x) {
  const double d = (x - spec.center).norm();
  double gap = 0.0;
  if (d < spec.space.r_in()) gap = spec.space.r_in() - d;
  if (d > spec.space.r_out()) gap = d - spec.space.r_out();
  return spec.time.t0() + gap / medium.c0();
}

double primary_wave(const SourceSpec& spec, const MediumParams& medium, const Vec3& x, double t, int dt_order,
                    PrimaryQuadrature quad) {
  if (dt_order < 0 || dt_order > 2) throw InvalidArgument("sources", "primary wave dt_order must be in 0..2");
  if (quad.nodes < PrimaryQuadrature::kMinNodes) {
    throw ResolutionError("sources", "primary wave needs at least " + std::to_string(PrimaryQuadrature::kMinNodes) +
                                         " Gauss nodes per sub-interval");
  }
  if (t <= first_arrival(spec, medium, x)) return 0.0;

  const double c0 = medium.c0();
  const double d = (x - spec.center).norm();
  const double r_in = spec.space.r_in(), r_out = spec.space.r_out();
  const bool at_center = d < 1e-7 * r_out;

  // Sub-intervals in rho: kinks at rho = d and wherever a retarded argument
  // crosses a breakpoint of the time profile.
  std::vector<double> cuts = {r_in, r_out};
  auto add_cut = [&](double rho) {
    if (rho > r_in && rho < r_out) cuts.push_back(rho);
  };
  add_cut(d);
  for (double b : spec.time.breakpoints()) {
    const double lag = c0 * (t - b);
    add_cut(d + lag);
    add_cut(d - lag);
    add_cut(lag - d);
  }
  std::sort(cuts.begin(), cuts.end());

  // Shell integral of g^(n)(t - |x-y|/c0)/|x-y| over |y - center| = rho.
  auto shell = [&](double rho) {
    if (at_center) return 4.0 * kPi * rho * spec.time.eval(t - rho / c0, dt_order);
    const double near = spec.time.eval(t - std::abs(d - rho) / c0, dt_order - 1);
    const double far = spec.time.eval(t - (d + rho) / c0, dt_order - 1);
    return 2.0 * kPi * rho * c0 / d * (near - far);
  };

  const GaussRule& g = gauss_legendre(quad.nodes);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (b - a <= 0.0) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double part = 0.0;
    for (int i = 0; i < quad.nodes; ++i) {
      const double rho = mid + half * g.x[i];
      part += g.w[i] * spec.space(rho) * shell(rho);
    }
    total += half * part;
  }
  return medium.rho0 * spec.amplitude * total / (4.0 * kPi);
}

WaveTrace primary_trace(const SourceSpec& spec, const MediumParams& medium, const Vec3& x, const TimeGrid& grid,
                        int dt_order, PrimaryQuadrature quad) {
  grid.validate();
  return WaveTrace::sample(grid, [&](double t) { return primary_wave(spec, medium, x, t, dt_order, quad); });
}

WaveTrace primary_second_deriv_trace(const SourceSpec& spec, const MediumParams& medium, const Vec3& y0,
                                     const TimeGrid& grid, PrimaryQuadrature quad) {
  return primary_trace(spec, medium, y0, grid, 2, quad);
}

}  // namespace minnaert
