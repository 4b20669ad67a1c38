#include "minnaert/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "minnaert/errors.hpp"

namespace minnaert {

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial({0.0});
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double s) const {
  auto r = c_;
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::composed_affine(double a, double b) const {
  // Horner in polynomial arithmetic.
  const Polynomial lin({b, a});
  Polynomial acc({0.0});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial({*it});
  return acc;
}

Polynomial bump_polynomial() {
  // (1 - s^2)^4 = 1 - 4 s^2 + 6 s^4 - 4 s^6 + s^8
  return Polynomial({1, 0, -4, 0, 6, 0, -4, 0, 1});
}

TimeProfile::TimeProfile(std::vector<double> breaks, std::vector<Polynomial> pieces)
    : breaks_(std::move(breaks)) {
  // Orders -1..3. The antiderivative is made continuous across breakpoints.
  derivs_.assign(5, {});
  derivs_[1] = pieces;
  for (int o = 2; o <= 4; ++o) {
    for (const auto& p : derivs_[o - 1]) derivs_[o].push_back(p.derivative());
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Polynomial a = pieces[k].antiderivative() + Polynomial({acc});
    acc = a(breaks_[k + 1] - breaks_[k]);
    derivs_[0].push_back(std::move(a));
  }
}

TimeProfile TimeProfile::bump(double t0, double t1) {
  if (!(t1 > t0) || !(t0 >= 0.0)) throw InvalidArgument("sources", "time support needs t1 > t0 >= 0");
  const double half = 0.5 * (t1 - t0);
  // s = (t - t0)/half - 1 with local variable x = t - t0.
  return TimeProfile({t0, t1}, {bump_polynomial().composed_affine(1.0 / half, -1.0)});
}

TimeProfile TimeProfile::plateau(double t0, double t1, double ramp) {
  if (!(t1 > t0) || !(t0 >= 0.0)) throw InvalidArgument("sources", "time support needs t1 > t0 >= 0");
  if (!(ramp > 0.0) || !(2.0 * ramp < t1 - t0)) {
    throw InvalidArgument("sources", "plateau ramp must be > 0 and shorter than half the support");
  }
  // Rise R(x) = int_0^x bump / int bump over the ramp, x in [0, ramp].
  const double half = 0.5 * ramp;
  const Polynomial b = bump_polynomial().composed_affine(1.0 / half, -1.0);
  const Polynomial ib = b.antiderivative();
  const Polynomial rise = ib.scaled(1.0 / ib(ramp));
  // Fall F(x) = 1 - R(x) on [t1 - ramp, t1].
  const Polynomial fall = Polynomial({1.0}) + rise.scaled(-1.0);
  return TimeProfile({t0, t0 + ramp, t1 - ramp, t1}, {rise, Polynomial({1.0}), fall});
}

double TimeProfile::eval(double t, int order) const {
  if (order < -1 || order > 3) throw InvalidArgument("sources", "time derivative order must be in [-1, 3]");
  const auto& pieces = derivs_[order + 1];
  if (t <= breaks_.front()) return 0.0;
  if (t >= breaks_.back()) {
    if (order != -1) return 0.0;
    return pieces.back()(breaks_.back() - breaks_[breaks_.size() - 2]);
  }
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return pieces[k](t - breaks_[k]);
}

SpaceProfile::SpaceProfile(double r_in, double r_out) : r_in_(r_in), r_out_(r_out) {
  if (!(r_in >= 0.0) || !(r_out > r_in)) throw InvalidArgument("sources", "space support needs r_out > r_in >= 0");
}

double SpaceProfile::operator()(double r) const {
  if (r <= r_in_ || r >= r_out_) return 0.0;
  const double sigma = (r - 0.5 * (r_in_ + r_out_)) / (0.5 * (r_out_ - r_in_));
  const double w = 1.0 - sigma * sigma;
  return (w * w) * (w * w);
}

}  // namespace minnaert
