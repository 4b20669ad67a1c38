#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minnaert/errors.hpp"
#include "minnaert/oracle.hpp"
#include "minnaert/waves.hpp"

using namespace minnaert;
constexpr double kPi = std::numbers::pi;

namespace {

RadialConfig free_field(std::size_t nr) {
  RadialConfig c;
  c.medium.eps = 0.05;
  c.source.time = TimeProfile::bump(0.0, 1.0);
  c.r_max = 4.0;
  c.nr = nr;
  c.t_end = 6.0;
  c.receivers = {1.5, 2.0, 3.0};
  c.bubble = false;
  return c;
}

RadialConfig with_bubble(double eps, double t_end) {
  RadialConfig c;
  c.medium.eps = eps;
  c.source.time = TimeProfile::bump(0.0, 1.0);
  c.r_max = 4.0;
  c.set_spacing(eps / 32.0);
  c.t_end = t_end;
  c.receivers = {2.0};
  return c;
}

}  // namespace

TEST_CASE("free-field oracle reproduces the retarded potential") {
  const RadialConfig c = free_field(4000);
  const RadialSolution sol = solve_radial(c);
  REQUIRE(sol.traces.size() == c.receivers.size());
  for (std::size_t k = 0; k < c.receivers.size(); ++k) {
    const WaveTrace& u = sol.traces[k];
    const Vec3 x(c.receivers[k], 0.0, 0.0);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < u.size(); i += 10) {
      const double v = primary_wave(c.source, c.medium, x, u.time(i));
      worst = std::max(worst, std::abs(u.values[i] - v));
      peak = std::max(peak, std::abs(v));
    }
    CHECK(peak > 0.0);
    CHECK(worst <= 1e-2 * peak);
  }
}

TEST_CASE("oracle is causal") {
  const RadialConfig c = free_field(2000);
  const RadialSolution sol = solve_radial(c);
  for (std::size_t k = 0; k < c.receivers.size(); ++k) {
    const WaveTrace& u = sol.traces[k];
    const double arrival = c.source.time.t0() + (c.receivers[k] - c.source.space.r_out()) / c.medium.c0();
    for (std::size_t i = 0; u.time(i) < arrival - sol.dr / c.medium.c0(); ++i) {
      CHECK(std::abs(u.values[i]) <= 1e-12 * u.max_abs());
    }
  }
}

TEST_CASE("free-field grid convergence is second order") {
  std::vector<RadialSolution> sol;
  for (std::size_t nr : {500, 1000, 2000}) sol.push_back(solve_radial(free_field(nr)));
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t r = 0; r < 3; ++r) {
    const WaveTrace &a = sol[0].traces[r], &b = sol[1].traces[r], &c = sol[2].traces[r];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double t = a.time(i);
      d1 = std::max(d1, std::abs(b.at(t) - a.values[i]));
      d2 = std::max(d2, std::abs(c.at(t) - b.at(t)));
    }
  }
  CHECK(d1 > 0.0);
  CHECK(d2 <= 0.25 * d1);
}

TEST_CASE("bubble rings at the Minnaert frequency and decays at the pole rate") {
  const double eps = 0.1;
  RadialConfig c = with_bubble(eps, 40.0);
  const RadialSolution wet = solve_radial(c);
  c.bubble = false;
  const RadialSolution dry = solve_radial(c);
  CHECK(wet.max_abs <= 10.0 * dry.max_abs);

  const WaveTrace scattered = wet.traces[0] - dry.traces[0];
  const double quiet = 2.0 + 3.0;
  std::vector<double> zc;
  std::vector<std::pair<double, double>> pk;
  for (std::size_t i = 1; i + 1 < scattered.size(); ++i) {
    if (scattered.time(i) < quiet) continue;
    const double l = scattered.values[i - 1], m = scattered.values[i], r = scattered.values[i + 1];
    if ((l < 0.0 && m >= 0.0) || (l > 0.0 && m <= 0.0)) zc.push_back(scattered.time(i - 1) + scattered.dt * l / (l - m));
    if ((m - l) * (r - m) < 0.0) pk.emplace_back(scattered.time(i), std::abs(m));
  }
  REQUIRE(zc.size() >= 8);
  const double half = (zc.back() - zc.front()) / static_cast<double>(zc.size() - 1);
  CHECK(std::abs((kPi / half) / std::sqrt(3.0) - 1.0) < 0.03);

  REQUIRE(pk.size() >= 8);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [t, v] : pk) {
    sx += t;
    sy += std::log(v);
    sxx += t * t;
    sxy += t * std::log(v);
  }
  const double n = static_cast<double>(pk.size());
  const double rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(rate / (1.5 * eps / c.medium.c0()) - 1.0) < 0.10);
}

TEST_CASE("interface flux is single valued and exact for the static field") {
  RadialConfig c = with_bubble(0.1, 1.0);
  c.medium.rho1 = 3.0;
  c.medium.rho0 = 1.7;
  const auto trans = face_transmissibility(c);
  REQUIRE(trans.size() == c.nr);
  CHECK(trans[0] == 0.0);
  // Static field with unit outward flux: u(r) = int_r^inf rho(s) / s^2 ds.
  const double dr = c.dr(), eps = c.medium.eps, rho_in = c.medium.rho1 * eps * eps, rho_out = c.medium.rho0;
  auto u = [&](double r) {
    if (r >= eps) return rho_out / r;
    return rho_out / eps + rho_in * (1.0 / r - 1.0 / eps);
  };
  for (std::size_t j = 1; j < c.nr; ++j) {
    const double flux = trans[j] * (u((j - 0.5) * dr) - u((j + 0.5) * dr));
    CHECK(flux == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("oracle configuration errors") {
  RadialConfig c = with_bubble(0.1, 1.0);
  CHECK_NOTHROW(c.validate());

  RadialConfig bad = c;
  bad.cfl = 0.95;
  CHECK_THROWS_AS(solve_radial(bad), StabilityError);

  bad = c;
  bad.set_spacing(0.1 / 8.0);
  CHECK_THROWS_AS(solve_radial(bad), ResolutionError);

  bad = c;
  bad.set_spacing(0.1 / 32.5);  // bubble boundary not on a face
  CHECK_THROWS_AS(solve_radial(bad), ResolutionError);

  bad = c;
  bad.source.space = SpaceProfile(0.05, 1.0);  // overlaps the bubble
  CHECK_THROWS_AS(solve_radial(bad), InvalidArgument);

  bad = c;
  bad.source.center = Vec3(0.5, 0, 0);
  CHECK_THROWS_AS(solve_radial(bad), InvalidArgument);

  bad = c;
  bad.receivers = {5.0};
  CHECK_THROWS_AS(solve_radial(bad), InvalidArgument);

  bad = c;
  bad.nr = 0;
  CHECK_THROWS_AS(solve_radial(bad), InvalidArgument);
}

TEST_CASE("receiver norms") {
  const WaveTrace a(0.0, 1.0, {1.0, -1.0, 1.0, -1.0});
  const WaveTrace b(0.0, 1.0, {2.0, 2.0, 2.0, 2.0});
  CHECK(receiver_norm({a}, {3.0}) == doctest::Approx(1.0));
  CHECK(receiver_sup({a}, {3.0}) == doctest::Approx(1.0));
  // Weights 1/2 and 1/5.
  CHECK(receiver_norm({a, b}, {1.0, 2.0}) == doctest::Approx(std::sqrt((0.5 * 1.0 + 0.2 * 4.0) / 0.7)));
  CHECK(receiver_sup({a, b}, {1.0, 2.0}) == doctest::Approx(std::max(0.5 * 1.0, 0.2 * 2.0) / 0.5));
  CHECK_THROWS_AS(receiver_norm({a}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("sweep rejects grids that coarsen as eps shrinks") {
  SweepConfig s;
  s.base = with_bubble(0.1, 1.0);
  s.base.receivers = {1.5, 2.0};
  s.eps_list = {0.2, 0.1, 0.05};
  s.dr_list = {0.05 / 64, 0.05 / 32, 0.05 / 16};
  CHECK_THROWS_AS(remainder_sweep(s), InvalidArgument);
  s.dr_list = {0.2 / 32, 0.2 / 32};
  CHECK_THROWS_AS(remainder_sweep(s), InvalidArgument);
  s.dr_list.clear();
  s.eps_list = {0.1, 0.05};
  CHECK_THROWS_AS(remainder_sweep(s), InvalidArgument);
}

TEST_CASE("small sweep: tail is O(eps) and explains most of the scattered field") {
  SweepConfig s;
  s.base = with_bubble(0.2, 1.0);
  s.base.receivers = {1.5, 2.0, 2.5, 3.0};
  s.eps_list = {0.2, 0.1, 0.05};
  s.dr_list = {0.05 / 16, 0.05 / 16, 0.05 / 16};
  s.horizon = 1.0;
  s.jobs = 3;
  const SweepReport rep = remainder_sweep(s);
  REQUIRE(rep.points.size() == 3);
  for (const auto& p : rep.points) {
    CHECK(p.remainder < p.ablated);
    CHECK(p.t_end == doctest::Approx(1.0 / p.eps));
  }
  CHECK(rep.tail_slope == doctest::Approx(1.0).epsilon(0.15));
  CHECK(rep.ablated_slope == doctest::Approx(1.0).epsilon(0.15));
  CHECK(rep.remainder_slope > rep.ablated_slope);
}
