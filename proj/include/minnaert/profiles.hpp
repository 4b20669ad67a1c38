#pragma once

#include <vector>

namespace minnaert {

/// Dense polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  double operator()(double x) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at x = 0.
  Polynomial antiderivative() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial scaled(double s) const;
  /// p(a x + b).
  Polynomial composed_affine(double a, double b) const;
  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

 private:
  std::vector<double> c_;
};

/// (1 - s^2)^4 on [-1, 1]; C^3 at the support edges.
Polynomial bump_polynomial();

/// Compactly supported pulse g(t), piecewise polynomial in t with exact
/// derivatives up to third order and a causal antiderivative
/// G(t) = int_{-inf}^t g.
class TimeProfile {
 public:
  /// (1 - s^2)^4 with s mapping [t0, t1] onto [-1, 1].
  static TimeProfile bump(double t0, double t1);
  /// Rises smoothly over [t0, t0 + ramp], equals 1 until t1 - ramp, falls to
  /// 0 at t1. Ramps are normalized integrals of the bump.
  static TimeProfile plateau(double t0, double t1, double ramp);

  /// order in {-1 (antiderivative), 0, 1, 2, 3}.
  double eval(double t, int order = 0) const;

  double t0() const { return breaks_.front(); }
  double t1() const { return breaks_.back(); }
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  TimeProfile(std::vector<double> breaks, std::vector<Polynomial> pieces);

  std::vector<double> breaks_;
  // derivs_[order + 1][k] is a polynomial in (t - breaks_[k]) on piece k.
  std::vector<std::vector<Polynomial>> derivs_;
};

/// Radial bump (1 - sigma^2)^4, sigma = (r - r_mid) / half_width, supported
/// on the annulus [r_in, r_out].
class SpaceProfile {
 public:
  SpaceProfile(double r_in, double r_out);
  double operator()(double r) const;
  double r_in() const { return r_in_; }
  double r_out() const { return r_out_; }

 private:
  double r_in_, r_out_;
};

}  // namespace minnaert
