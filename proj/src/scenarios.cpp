#include "minnaert/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "minnaert/errors.hpp"
#include "minnaert/features.hpp"
#include "minnaert/oracle.hpp"
#include "minnaert/parallel.hpp"
#include "minnaert/waves.hpp"

namespace minnaert {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }
json vjson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json eta_json(const EtaCoefficients& e) {
  return {{"eta1", e.eta1}, {"eta2", e.eta2}, {"eta3", e.eta3}, {"eta4", e.eta4}};
}

json resonance_json(const ResonanceSpec& r) {
  return {{"omega_M", r.omega_M}, {"z_plus", cjson(r.z_plus)}, {"z_minus", cjson(r.z_minus)},
          {"delta", r.delta},     {"lifetime", std::isfinite(r.lifetime) ? json(r.lifetime) : json(nullptr)},
          {"period", r.period}};
}

TimeGrid config_grid(const RunConfig& c) { return TimeGrid::covering(0.0, c.time.t_end, c.time.dt); }

double oracle_spacing(const RunConfig& c, double eps) {
  return c.oracle.dr > 0.0 ? c.oracle.dr : eps / c.oracle.cells_per_eps;
}

RadialConfig radial_config(const RunConfig& c) {
  RadialConfig rc;
  rc.medium = c.medium;
  rc.source = c.source;
  rc.r_max = c.oracle.r_max;
  rc.cfl = c.oracle.cfl;
  rc.t_end = c.time.t_end;
  for (const auto& x : c.receivers) rc.receivers.push_back((x - c.medium.y0).norm());
  rc.set_spacing(oracle_spacing(c, c.medium.eps));
  rc.output_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(c.oracle.output_dt / rc.dt() + 1e-9)));
  return rc;
}

std::vector<Artifact> scenario_capacitance(const RunConfig& c) {
  const ShapeData s = resolve_shape(c.geometry, c.medium.c0(), true);
  json j = {{"geometry", c.geometry.kind},
            {"faces", s.faces},
            {"C_Omega", s.capacitance},
            {"volume", s.volume},
            {"area", s.area},
            {"condition_estimate", s.condition_estimate},
            {"eta", eta_json(s.eta)}};
  if (s.faces > 0) {
    j["identities"] = {{"volume_integral", s.identities.volume_integral},
                       {"volume_target", s.identities.volume_target},
                       {"volume_residual", s.identities.volume_residual},
                       {"moment_integral", s.identities.moment_integral},
                       {"moment_target", s.identities.moment_target},
                       {"moment_residual", s.identities.moment_residual}};
    j["null_identity_residual"] = s.null_identity_residual;
  }
  return {{"capacitance.json", dump(j)}};
}

std::vector<Artifact> scenario_resonance(const RunConfig& c) {
  const ShapeData s = resolve_shape(c.geometry, c.medium.c0(), false);
  const ResonanceSpec r = make_resonance(s.capacitance, s.volume, c.medium);
  json j = resonance_json(r);
  j["C_Omega"] = s.capacitance;
  j["volume"] = s.volume;
  j["eta"] = eta_json(s.eta);
  const double g = gamma_eps(c.medium, r.omega_M);
  j["gamma_eps"] = g;
  json roots = json::array();
  for (int level = 1; level <= 3; ++level) {
    json e = {{"j", level}};
    try {
      const RootPair p = reduced_roots(level, g, s.eta);
      e["plus"] = cjson(p.plus);
      e["minus"] = cjson(p.minus);
      if (c.medium.eps > 0.0) {
        e["physical_plus"] = cjson(to_physical_exponent(p.plus, c.medium.eps));
        e["physical_minus"] = cjson(to_physical_exponent(p.minus, c.medium.eps));
      }
    } catch (const UnsupportedRegime& err) {
      e["unsupported"] = err.what();
    }
    roots.push_back(e);
  }
  j["reduced_roots"] = roots;
  return {{"resonance.json", dump(j)}};
}

std::vector<Artifact> scenario_simulate(const RunConfig& c, int jobs) {
  const ShapeData s = resolve_shape(c.geometry, c.medium.c0(), false);
  const BubbleModel bubble = make_bubble(s.capacitance, s.volume, c.medium);
  const TimeGrid grid = config_grid(c);

  const WaveTrace forcing = modulation_forcing(c.source, c.medium, bubble.resonance.omega_M, s.volume, grid);
  const WaveTrace a = solve_modulation(forcing, c.medium, bubble.resonance.omega_M, s.capacitance);

  std::vector<ExpansionResult> res(c.receivers.size());
  parallel_for(res.size(), jobs, [&](std::size_t k) { res[k] = dominant_expansion(c.source, bubble, c.receivers[k], grid); });

  std::vector<Artifact> out;
  json recv = json::array();
  for (std::size_t k = 0; k < res.size(); ++k) {
    const auto idx = std::to_string(k);
    out.push_back({"primary_" + idx + ".csv", to_csv(res[k].primary)});
    out.push_back({"tail_" + idx + ".csv", to_csv(res[k].tail)});
    out.push_back({"total_" + idx + ".csv", to_csv(res[k].total)});
    const WaveTrace ode_tail = tail_from_modulation(a, bubble, c.receivers[k]);
    const double scale = res[k].tail.max_abs();
    recv.push_back({{"index", k},
                    {"position", vjson(c.receivers[k])},
                    {"distance", (c.receivers[k] - c.medium.y0).norm()},
                    {"birth_time", (c.receivers[k] - c.medium.y0).norm() / c.medium.c0()},
                    {"max_tail", scale},
                    {"tail_imag_residue", res[k].imag_residue},
                    {"ode_tail_relative_gap", scale > 0.0 ? sup_distance(ode_tail, res[k].tail) / scale : 0.0}});
  }
  out.push_back({"modulation.csv", to_csv(a)});
  json j = resonance_json(bubble.resonance);
  j["C_Omega"] = s.capacitance;
  j["volume"] = s.volume;
  j["receivers"] = recv;
  j["dt"] = grid.dt;
  j["samples"] = grid.count;
  out.push_back({"simulate.json", dump(j)});
  return out;
}

std::vector<Artifact> scenario_oracle(const RunConfig& c, int jobs) {
  RadialConfig with = radial_config(c);
  RadialConfig without = with;
  without.bubble = false;
  with.validate();
  std::vector<RadialSolution> sols(c.oracle.scattered ? 2 : 1);
  parallel_for(sols.size(), jobs, [&](std::size_t i) { sols[i] = solve_radial(i == 0 ? with : without); });

  std::vector<Artifact> out;
  json recv = json::array();
  for (std::size_t k = 0; k < with.receivers.size(); ++k) {
    const auto idx = std::to_string(k);
    out.push_back({"oracle_" + idx + ".csv", to_csv(sols[0].traces[k])});
    if (c.oracle.scattered) out.push_back({"scattered_" + idx + ".csv", to_csv(sols[0].traces[k] - sols[1].traces[k])});
    recv.push_back({{"index", k}, {"radius", with.receivers[k]}});
  }
  json j = {{"eps", c.medium.eps}, {"dr", sols[0].dr},          {"dt", sols[0].dt},
            {"nr", with.nr},       {"r_max", with.r_max},        {"output_dt", sols[0].dt * static_cast<double>(with.output_stride)},
            {"max_abs", sols[0].max_abs}, {"receivers", recv}};
  if (c.oracle.scattered) j["free_max_abs"] = sols[1].max_abs;
  out.push_back({"oracle.json", dump(j)});
  return out;
}

std::vector<Artifact> scenario_sweep(const RunConfig& c, int jobs) {
  SweepConfig sc;
  sc.base = radial_config([&] {
    RunConfig tmp = c;
    tmp.medium.eps = *std::min_element(c.sweep.eps.begin(), c.sweep.eps.end());
    return tmp;
  }());
  sc.eps_list = c.sweep.eps;
  if (c.oracle.dr == 0.0) {
    for (double e : c.sweep.eps) sc.dr_list.push_back(e / c.oracle.cells_per_eps);
  }
  sc.horizon = c.sweep.horizon;
  sc.output_dt = c.oracle.output_dt;
  sc.jobs = jobs;
  const SweepReport rep = remainder_sweep(sc);

  json pts = json::array();
  for (const auto& p : rep.points) {
    pts.push_back({{"eps", p.eps},
                   {"dr", p.dr},
                   {"t_end", p.t_end},
                   {"remainder", p.remainder},
                   {"remainder_sup", p.remainder_sup},
                   {"tail", p.tail},
                   {"ablated", p.ablated}});
  }
  json j = {{"points", pts},
            {"remainder_slope", rep.remainder_slope},
            {"remainder_sup_slope", rep.remainder_sup_slope},
            {"tail_slope", rep.tail_slope},
            {"ablated_slope", rep.ablated_slope},
            {"horizon", c.sweep.horizon},
            {"norm", "weighted time-RMS, weight 1/(1+r^2)"}};
  return {{"sweep.json", dump(j)}};
}

json feature_json(const FeatureReport& f) {
  return {{"birth_time", f.birth_time},
          {"period", f.period},
          {"decay_rate", f.decay_rate},
          {"lifetime", f.lifetime},
          {"ringing", f.ringing},
          {"crossings", f.crossings},
          {"extrema", f.extrema},
          {"decay_log_residual", f.decay_log_residual},
          {"diagnostic", f.diagnostic}};
}

FeatureReport extract_features(const RunConfig& c) {
  const auto& fc = c.features;
  const WaveTrace tr = read_csv(fc.trace);
  const double t_end = tr.time(tr.size() - 1);
  const TimeWindow w{fc.t_a, fc.t_b > 0.0 ? fc.t_b : t_end};
  std::optional<double> birth;
  if (!fc.reference_trace.empty()) {
    const WaveTrace ref = read_csv(fc.reference_trace);
    birth = differential_birth_time(ref, fc.reference_radius, tr, fc.receiver_radius, fc.threshold).birth_time;
  }
  return analyze(tr, w, fc.threshold, birth);
}

std::vector<Artifact> scenario_features(const RunConfig& c) {
  return {{"features.json", dump(feature_json(extract_features(c)))}};
}

std::vector<Artifact> scenario_invert(const RunConfig& c) {
  const FeatureReport f = extract_features(c);
  const ShapeData s = resolve_shape(c.geometry, c.medium.c0(), false);
  const BackgroundEstimate b = invert_background(f, {s.capacitance, s.volume, c.medium.k1, c.distance});
  json j = {{"features", feature_json(f)},
            {"c0_hat", b.c0_hat},
            {"omega_hat", b.omega_hat},
            {"rho0_hat", b.rho0_hat},
            {"C_Omega", s.capacitance},
            {"volume", s.volume},
            {"k1", c.medium.k1},
            {"distance", c.distance}};
  return {{"invert.json", dump(j)}};
}

}  // namespace

EtaCoefficients sphere_eta(double radius, double c0) {
  if (!(radius > 0.0) || !(c0 > 0.0)) throw InvalidArgument("layerpot", "sphere eta needs radius > 0 and c0 > 0");
  const double vol = 4.0 * kPi * radius * radius * radius / 3.0;
  // int int nu.(x-y) |x-y|^(l-2) phi = 8 pi^2 R^(l+2) 2^(l+1) / (l+2) on the sphere.
  auto coef = [&](int l, double fact) {
    const double integral = 8.0 * kPi * kPi * std::pow(radius, l + 2) * std::pow(2.0, l + 1) / (l + 2);
    const double sign = (l % 2 == 0) ? -1.0 : 1.0;  // -(-1)^l
    return sign * l / (vol * std::pow(c0, l - 1) * fact) * integral;
  };
  EtaCoefficients e;
  e.eta2 = -4.0 * kPi * radius / (4.0 * kPi * c0);
  e.eta3 = coef(3, 24.0);
  e.eta4 = coef(4, 120.0);
  return e;
}

ShapeData resolve_shape(const GeometryConfig& g, double c0, bool with_identities) {
  ShapeData s;
  s.kind = g.kind;
  if (g.kind == "analytic_sphere") {
    s.capacitance = 4.0 * kPi * g.radius;
    s.volume = 4.0 * kPi * g.radius * g.radius * g.radius / 3.0;
    s.area = 4.0 * kPi * g.radius * g.radius;
    s.eta = sphere_eta(g.radius, c0);
    return s;
  }
  MeshPtr mesh = std::make_shared<const SurfaceMesh>(g.kind == "mesh" ? read_off(g.path)
                                                                     : make_sphere_mesh(g.radius, g.level));
  const Equilibrium eq = solve_equilibrium(mesh);
  s.faces = mesh->face_count();
  s.capacitance = eq.capacitance;
  s.volume = enclosed_volume(*mesh);
  s.area = mesh->total_area();
  s.condition_estimate = eq.condition_estimate;
  s.eta = eta_coefficients(*mesh, eq.phi, c0);
  if (with_identities) {
    s.identities = geometric_identities_report(*mesh, eq.phi);
    s.null_identity_residual = null_identity_residual(assemble_np_adjoint(mesh, 0), eq.phi);
  }
  return s;
}

std::vector<Artifact> run_scenario(const RunConfig& c, int jobs) {
  const std::string& s = c.scenario;
  if (s == "capacitance") return scenario_capacitance(c);
  if (s == "resonance") return scenario_resonance(c);
  if (s == "simulate") return scenario_simulate(c, jobs);
  if (s == "oracle") return scenario_oracle(c, jobs);
  if (s == "sweep") return scenario_sweep(c, jobs);
  if (s == "features") return scenario_features(c);
  if (s == "invert") return scenario_invert(c);
  throw InvalidArgument("cli", "unknown scenario '" + s + "'");
}

void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cli", "cannot create output directory " + dir + ": " + ec.message());
  for (const auto& a : artifacts) {
    const auto path = std::filesystem::path(dir) / a.name;
    std::ofstream os(path, std::ios::binary);
    if (!os || !(os << a.content)) throw InvalidArgument("cli", "cannot write " + path.string());
  }
}

}  // namespace minnaert
