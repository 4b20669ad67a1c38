#include "minnaert/resonance.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {
constexpr double kPi = std::numbers::pi;
}

double MediumParams::c0() const { return std::sqrt(k0 / rho0); }
double MediumParams::c1() const { return std::sqrt(k1 / rho1); }

void MediumParams::validate() const {
  for (double v : {rho0, k0, rho1, k1}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("resonance", "material constants rho0, k0, rho1, k1 must be > 0");
    }
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("resonance", "eps must be >= 0");
  if (!(rho1 * eps * eps < rho0)) throw InvalidArgument("resonance", "contrast requires rho1 eps^2 < rho0");
  if (!y0.allFinite()) throw InvalidArgument("resonance", "bubble center must be finite");
}

double minnaert_frequency(double capacitance, double volume, const MediumParams& medium) {
  if (!(capacitance > 0.0) || !(volume > 0.0) || !(medium.k1 > 0.0) || !(medium.rho0 > 0.0)) {
    throw InvalidArgument("resonance", "Minnaert frequency needs positive C, |Omega|, k1, rho0");
  }
  return std::sqrt(capacitance * medium.k1 / (volume * medium.rho0));
}

std::pair<cplx, cplx> resonance_poles(double omega_M, double eps, double capacitance, double c0) {
  if (!(eps >= 0.0)) throw InvalidArgument("resonance", "eps must be >= 0");
  const double im = -eps * capacitance * omega_M * omega_M / (8.0 * kPi * c0);
  return {cplx(omega_M, im), cplx(-omega_M, im)};
}

ResonanceSpec make_resonance(double capacitance, double volume, const MediumParams& medium) {
  medium.validate();
  ResonanceSpec r;
  r.omega_M = minnaert_frequency(capacitance, volume, medium);
  std::tie(r.z_plus, r.z_minus) = resonance_poles(r.omega_M, medium.eps, capacitance, medium.c0());
  r.delta = -r.z_plus.imag();
  r.lifetime = r.delta > 0.0 ? 1.0 / r.delta : std::numeric_limits<double>::infinity();
  r.period = 2.0 * kPi / r.omega_M;
  return r;
}

double gamma_eps(const MediumParams& medium, double omega_M) {
  const double denom = 1.0 - medium.rho1 * medium.eps * medium.eps / medium.rho0;
  if (!(denom > 0.0)) throw InvalidArgument("resonance", "contrast assumption violated: rho1 eps^2 >= rho0");
  return omega_M * omega_M * medium.eps * medium.eps / denom;
}

std::vector<double> damped_sine_convolution(std::span<const double> f, double dt, double omega, double decay) {
  const std::size_t n = f.size();
  std::vector<double> q(n, 0.0);
  if (n == 0) return q;
  const double rho = std::exp(-decay * dt);
  const double cs = rho * std::cos(omega * dt);
  const double sn = rho * std::sin(omega * dt);
  // (c, s) = sum_k exp(-decay s_k) (cos, sin)(omega s_k) f_k, s_k = (n-k) dt
  double c = f[0], s = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double cn = cs * c - sn * s + f[i];
    const double sn_ = sn * c + cs * s;
    c = cn;
    s = sn_;
    const double ti = dt * static_cast<double>(i);
    // Trapezoid end corrections; the k = i end carries sin(0) = 0.
    q[i] = dt * (s - 0.5 * std::exp(-decay * ti) * std::sin(omega * ti) * f[0]);
  }
  return q;
}

std::vector<cplx> exponential_convolution(std::span<const double> f, double dt, cplx lambda) {
  const std::size_t n = f.size();
  std::vector<cplx> q(n, cplx(0.0));
  if (n == 0) return q;
  const cplx step = std::exp(lambda * dt);
  cplx acc = f[0];
  for (std::size_t i = 1; i < n; ++i) {
    acc = step * acc + f[i];
    const double ti = dt * static_cast<double>(i);
    q[i] = dt * (acc - 0.5 * std::exp(lambda * ti) * f[0] - 0.5 * f[i]);
  }
  return q;
}

WaveTrace duhamel_solve(double a1, double a2, const WaveTrace& forcing) {
  if (!(a1 >= 0.0) || !(a2 > 0.0)) throw InvalidArgument("resonance", "need a1 >= 0 and a2 > 0");
  const double disc = a1 * a1 - 4.0 * a2;
  if (!(disc < 0.0)) {
    throw UnsupportedRegime("resonance", "only the oscillatory regime a1^2 - 4 a2 < 0 is supported");
  }
  forcing.validate("resonance");
  const double omega = 0.5 * std::sqrt(-disc);
  auto q = damped_sine_convolution(forcing.values, forcing.dt, omega, 0.5 * a1);
  for (double& v : q) v /= omega;
  return WaveTrace(forcing.t_start, forcing.dt, std::move(q));
}

namespace {

// Roots of A lambda^2 + B lambda + C = 0 with A > 0, ordered by Im.
RootPair quadratic_roots(double a, double b, double c) {
  const cplx sq = std::sqrt(cplx(b * b - 4.0 * a * c, 0.0));
  cplx r1 = (-b + sq) / (2.0 * a);
  cplx r2 = (-b - sq) / (2.0 * a);
  if (r1.imag() < r2.imag()) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace

RootPair reduced_roots(int j, double g, const EtaCoefficients& eta) {
  if (j < 1 || j > 3) throw InvalidArgument("resonance", "reduction index must be in {1,2,3}");
  if (!(g >= 0.0)) throw InvalidArgument("resonance", "gamma must be >= 0");
  const double e2 = eta.eta2, e3 = eta.eta3, e4 = eta.eta4;
  if (j == 1) return quadratic_roots(1.0, -e2 * g, g);

  const double d2 = 1.0 - e3 * g + e2 * e2 * g;
  if (!(d2 > 0.0)) throw UnsupportedRegime("resonance", "positivity 1 - (eta3 - eta2^2) gamma > 0 violated");
  if (j == 2) return quadratic_roots(d2, -e2 * g, g);

  const double b = (-e2 + e4 * g - e3 * g * e2) / d2;
  const double d3 = 1.0 - e3 * g + g * (e2 * e2 - e4 * g * e2 + e3 * e2 * e2 * g) / d2;
  if (!(d3 > 0.0)) throw UnsupportedRegime("resonance", "third-level positivity condition violated");
  return quadratic_roots(d3, g * b, g);
}

cplx to_physical_exponent(cplx lambda_scaled, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("resonance", "time conversion needs eps > 0");
  return lambda_scaled / eps;
}

PoleResiduals pole_residuals(const RootPair& roots, double eps, double omega_M, double capacitance, double c0) {
  const double re_target = -capacitance * omega_M * omega_M * eps * eps / (8.0 * kPi * c0);
  const double im_target = omega_M * eps;
  PoleResiduals r;
  r.real = std::max(std::abs(roots.plus.real() - re_target), std::abs(roots.minus.real() - re_target));
  r.imag = std::max(std::abs(roots.plus.imag() - im_target), std::abs(roots.minus.imag() + im_target));
  return r;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("resonance", "slope fit needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("resonance", "log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw InvalidArgument("resonance", "slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

PoleFit pole_asymptotics_check(std::span<const PoleSample> sweep, double omega_M, double capacitance, double c0) {
  if (sweep.size() < 4) throw InvalidArgument("resonance", "pole asymptotics need at least 4 eps values");
  PoleFit fit;
  std::vector<double> eps, re, im;
  for (const auto& s : sweep) {
    const auto r = pole_residuals(s.roots, s.eps, omega_M, capacitance, c0);
    fit.residuals.push_back(r);
    eps.push_back(s.eps);
    re.push_back(r.real);
    im.push_back(r.imag);
  }
  fit.real_slope = loglog_slope(eps, re);
  fit.imag_slope = loglog_slope(eps, im);
  return fit;
}

}  // namespace minnaert
