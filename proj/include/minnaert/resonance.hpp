#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "minnaert/geometry.hpp"
#include "minnaert/layerpot.hpp"
#include "minnaert/trace.hpp"

namespace minnaert {

using cplx = std::complex<double>;

/// Background (rho0, k0) and bubble (rho1 eps^2, k1 eps^2) material constants.
struct MediumParams {
  double rho0 = 1.0;
  double k0 = 1.0;
  double rho1 = 1.0;
  double k1 = 1.0;
  double eps = 0.0;
  Vec3 y0 = Vec3::Zero();

  double c0() const;
  double c1() const;
  /// All constants > 0, eps >= 0 and rho1 eps^2 < rho0.
  void validate() const;
};

struct ResonanceSpec {
  double omega_M = 0.0;
  cplx z_plus;
  cplx z_minus;
  double delta = 0.0;     // eps C omega_M^2 / (8 pi c0)
  double lifetime = 0.0;  // 1 / delta (infinite when eps = 0)
  double period = 0.0;    // 2 pi / omega_M
};

/// sqrt(C k1 / (|Omega| rho0)).
double minnaert_frequency(double capacitance, double volume, const MediumParams& medium);

/// z+- = +-omega_M - i eps C omega_M^2 / (8 pi c0).
std::pair<cplx, cplx> resonance_poles(double omega_M, double eps, double capacitance, double c0);

ResonanceSpec make_resonance(double capacitance, double volume, const MediumParams& medium);

/// omega_M^2 eps^2 / (1 - rho1 eps^2 / rho0).
double gamma_eps(const MediumParams& medium, double omega_M);

/// Causal solution of h'' + a1 h' + a2 h = f, h(0) = h'(0) = 0, in the
/// underdamped regime a1^2 < 4 a2, by trapezoidal convolution of f with the
/// damped-sine kernel on the forcing grid. The forcing is taken to start at
/// its first sample.
WaveTrace duhamel_solve(double a1, double a2, const WaveTrace& forcing);

/// Trapezoidal rule on the grid of f for
///   q(t_n) = int_0^{t_n - t_0} sin(omega s) exp(-decay s) f(t_n - s) ds.
/// Evaluated by an O(n) recursion that reproduces the direct sum.
std::vector<double> damped_sine_convolution(std::span<const double> f, double dt, double omega, double decay);

/// Complex counterpart: sum' exp(lambda s) f(t_n - s) ds, trapezoidal.
std::vector<cplx> exponential_convolution(std::span<const double> f, double dt, cplx lambda);

struct RootPair {
  cplx plus;   // Im >= 0
  cplx minus;  // Im <= 0
};

/// Roots of the reduced quadratic of level j in {1,2,3} (scaled time):
///   j=1: lambda^2 - eta2 g lambda + g = 0
///   j=2: D2 lambda^2 - eta2 g lambda + g = 0,  D2 = 1 - eta3 g + eta2^2 g
///   j=3: D3 lambda^2 + g B lambda + g = 0,
///        B  = (-eta2 + eta4 g - eta3 g eta2) / D2,
///        D3 = 1 - eta3 g + g (eta2^2 - eta4 g eta2 + eta3 eta2^2 g) / D2.
/// Throws UnsupportedRegime when D2 <= 0 (j >= 2) or D3 <= 0 (j = 3).
RootPair reduced_roots(int j, double gamma, const EtaCoefficients& eta);

/// Scaled-time exponent lambda -> physical-time exponent lambda / eps.
cplx to_physical_exponent(cplx lambda_scaled, double eps);

struct PoleResiduals {
  double real = 0.0;  // |Re(lambda) + C omega^2 eps^2 / (8 pi c0)|
  double imag = 0.0;  // |Im(lambda) -+ omega eps|
};

/// Worst case over the pair.
PoleResiduals pole_residuals(const RootPair& roots, double eps, double omega_M, double capacitance, double c0);

struct PoleSample {
  double eps = 0.0;
  RootPair roots;
};

struct PoleFit {
  double real_slope = 0.0;
  double imag_slope = 0.0;
  std::vector<PoleResiduals> residuals;
};

/// Least-squares log-log slopes of the residuals over the sweep (>= 4 points).
PoleFit pole_asymptotics_check(std::span<const PoleSample> sweep, double omega_M, double capacitance, double c0);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace minnaert
