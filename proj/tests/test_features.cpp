#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minnaert/errors.hpp"
#include "minnaert/features.hpp"
#include "minnaert/waves.hpp"

using namespace minnaert;
constexpr double kPi = std::numbers::pi;

namespace {

// H(t - 2) sin(sqrt3 (t - 2)) exp(-decay (t - 2)).
WaveTrace ringing(double decay, double dt = 0.01, double t_end = 60.0, double onset = 2.0) {
  return WaveTrace::sample({0.0, dt, static_cast<std::size_t>(t_end / dt) + 1}, [&](double t) {
    if (t < onset) return 0.0;
    return std::sin(std::sqrt(3.0) * (t - onset)) * std::exp(-decay * (t - onset));
  });
}

}  // namespace

TEST_CASE("birth time of a synthetic ringing trace") {
  const WaveTrace w = ringing(0.015);
  const double b = detect_birth_time(w, 0.01);
  CHECK(std::abs(b - 2.0) <= 2.0 * w.dt);
  CHECK(detect_birth_time(w, 0.5) > b);
  CHECK(detect_birth_time(10.0 * w, 0.01) == doctest::Approx(b).epsilon(1e-12));
  const WaveTrace zero(0.0, 0.01, std::vector<double>(100, 0.0));
  CHECK_THROWS_AS(detect_birth_time(zero, 0.01), NoSignalError);
  CHECK_THROWS_AS(detect_birth_time(w, 0.0), InvalidArgument);
  CHECK_THROWS_AS(detect_birth_time(w, 1.0), InvalidArgument);
}

TEST_CASE("period of a synthetic ringing trace") {
  const WaveTrace w = ringing(0.015);
  const TimeWindow win{3.0, 60.0};
  const double p = estimate_period(w, win);
  CHECK(std::abs(p / (2.0 * kPi / std::sqrt(3.0)) - 1.0) < 0.01);
  CHECK(estimate_period(10.0 * w, win) == doctest::Approx(p).epsilon(1e-12));
  CHECK(estimate_period(0.1 * w, win) == doctest::Approx(p).epsilon(1e-12));

  const WaveTrace mono = WaveTrace::sample({0.0, 0.01, 2000}, [](double t) { return std::exp(-t); });
  CHECK_THROWS_AS(estimate_period(mono, {0.0, 20.0}), InsufficientRingingError);
  // Three crossings are not enough.
  CHECK_THROWS_AS(estimate_period(w, {2.5, 2.5 + 1.4 * kPi / std::sqrt(3.0)}), InsufficientRingingError);
  CHECK_THROWS_AS(estimate_period(w, {5.0, 4.0}), InvalidArgument);
}

TEST_CASE("zero crossings are interpolated between samples") {
  const WaveTrace w = WaveTrace::sample({0.0, 0.1, 101}, [](double t) { return t - 3.05; });
  const auto zc = zero_crossings(w, {0.0, 10.0});
  REQUIRE(zc.size() == 1);
  CHECK(zc[0] == doctest::Approx(3.05).epsilon(1e-12));
}

TEST_CASE("decay rate of a synthetic ringing trace") {
  const WaveTrace w = ringing(0.015);
  const TimeWindow win{3.0, 60.0};
  const double rate = estimate_decay_rate(w, win);
  CHECK(std::abs(rate / 0.015 - 1.0) < 0.05);
  CHECK(estimate_decay_rate(7.0 * w, win) == doctest::Approx(rate).epsilon(1e-9));

  const WaveTrace flat = ringing(0.0);
  CHECK(std::abs(estimate_decay_rate(flat, win)) <= 1e-3 * std::sqrt(3.0));

  const WaveTrace growing = ringing(-0.05, 0.01, 40.0);
  CHECK_THROWS_AS(estimate_decay_rate(growing, {3.0, 40.0}), FitError);
  CHECK_THROWS_AS(estimate_decay_rate(w, {3.0, 4.0}), FitError);

  const DecayFit fit = fit_decay(w, win);
  CHECK(fit.extrema >= 4);
  CHECK(fit.log_residual < 1e-3);
}

TEST_CASE("local extrema are refined to sub-sample accuracy") {
  const WaveTrace w = WaveTrace::sample({0.0, 0.05, 201}, [](double t) { return std::cos(t - 0.013); });
  const auto ex = local_extrema(w, {1.0, 10.0});
  REQUIRE(ex.size() >= 2);
  CHECK(ex[0].t == doctest::Approx(kPi + 0.013).epsilon(1e-4));
  CHECK(ex[0].value == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("feature report") {
  const WaveTrace w = ringing(0.03);
  const FeatureReport r = analyze(w, {3.0, 60.0});
  CHECK(r.ringing);
  CHECK(r.period > 0.0);
  CHECK(r.decay_rate > 0.0);
  CHECK(r.lifetime * r.decay_rate == 1.0);
  CHECK(std::abs(r.birth_time - 2.0) <= 2.0 * w.dt);
  CHECK(r.crossings >= 4);

  const WaveTrace mono = WaveTrace::sample({0.0, 0.01, 2000}, [](double t) { return t > 1.0 ? std::exp(-t) : 0.0; });
  const FeatureReport q = analyze(mono, {2.0, 19.0});
  CHECK_FALSE(q.ringing);
  CHECK_FALSE(q.diagnostic.empty());

  const FeatureReport given = analyze(w, {3.0, 60.0}, 0.01, 1.7);
  CHECK(given.birth_time == 1.7);
}

TEST_CASE("differential birth time cancels the pulse shape") {
  // W(t - r) / r with W a smooth pulse starting late and slowly.
  const double c0 = 1.3;
  auto field = [&](double r) {
    return WaveTrace::sample({0.0, 0.002, 8001}, [&](double t) {
      const double s = t - r / c0 - 0.7;
      return s > 0.0 ? std::pow(s, 3) * std::exp(-s) * std::sin(2.0 * s) / r : 0.0;
    });
  };
  const DifferentialBirth d = differential_birth_time(field(0.5), 0.5, field(2.5), 2.5);
  CHECK(d.delay == doctest::Approx(2.0 / c0).epsilon(1e-3));
  CHECK(d.speed == doctest::Approx(c0).epsilon(1e-3));
  CHECK(d.birth_time == doctest::Approx(2.5 / c0).epsilon(1e-3));
  CHECK_THROWS_AS(differential_birth_time(field(0.5), 2.5, field(2.5), 0.5), InvalidArgument);
}

TEST_CASE("background inversion arithmetic") {
  FeatureReport r;
  r.ringing = true;
  r.birth_time = 2.0;
  r.period = 2.0 * kPi / std::sqrt(3.0);
  r.decay_rate = 0.015;
  r.lifetime = 1.0 / r.decay_rate;
  const KnownBubble known{4.0 * kPi, 4.0 * kPi / 3.0, 1.0, 2.0};
  const BackgroundEstimate e = invert_background(r, known);
  CHECK(e.c0_hat == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.omega_hat == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(e.rho0_hat == doctest::Approx(1.0).epsilon(1e-14));

  FeatureReport silent = r;
  silent.birth_time = 0.0;
  CHECK_THROWS_AS(invert_background(silent, known), InvalidArgument);
  FeatureReport flat = r;
  flat.ringing = false;
  CHECK_THROWS_AS(invert_background(flat, known), InvalidArgument);
  KnownBubble nowhere = known;
  nowhere.distance = 0.0;
  CHECK_THROWS_AS(invert_background(r, nowhere), InvalidArgument);
}

TEST_CASE("round trip through the resonant tail recovers the background") {
  MediumParams m;
  m.eps = 0.05;
  m.rho0 = 1.2;
  m.k0 = 1.2 * 0.9 * 0.9;  // c0 = 0.9
  const BubbleModel b = make_sphere_bubble(m);
  SourceSpec s;
  s.time = TimeProfile::bump(0.5, 1.5);
  const TimeGrid grid{0.0, 0.005, 16001};
  const double r_near = 1.5, r_far = 3.0;
  const WaveTrace near = resonant_tail_closed(s, b, Vec3(r_near, 0, 0), grid);
  const WaveTrace far = resonant_tail_closed(s, b, Vec3(r_far, 0, 0), grid);

  const DifferentialBirth d = differential_birth_time(near, r_near, far, r_far);
  const FeatureReport rep = analyze(far, {r_far / m.c0() + 4.0, grid.t_end()}, 0.01, d.birth_time);
  REQUIRE(rep.ringing);
  const BackgroundEstimate e = invert_background(rep, {b.capacitance, b.volume, m.k1, r_far});
  CHECK(std::abs(e.c0_hat / m.c0() - 1.0) < 0.02);
  CHECK(std::abs(e.rho0_hat / m.rho0 - 1.0) < 0.05);
  CHECK(std::abs(rep.decay_rate / b.resonance.delta - 1.0) < 0.05);
}
