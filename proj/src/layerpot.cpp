#include "minnaert/layerpot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>
#include <numbers>

#include <Eigen/Dense>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mesh(const MeshPtr& mesh) {
  if (!mesh) throw InvalidArgument("layerpot", "null mesh");
}

void check_same_mesh(const DensityOnSurface& a, const MeshPtr& mesh) {
  if (a.mesh != mesh) throw InvalidArgument("layerpot", "density lives on a different mesh");
}

}  // namespace

DensityOnSurface::DensityOnSurface(MeshPtr m, Eigen::VectorXd v) : mesh(std::move(m)), values(std::move(v)) {
  check_mesh(mesh);
  if (static_cast<std::size_t>(values.size()) != mesh->face_count()) {
    throw InvalidArgument("layerpot", "density length differs from face count");
  }
  if (!values.allFinite()) throw InvalidArgument("layerpot", "density has non-finite values");
}

DensityOnSurface DensityOnSurface::constant(MeshPtr m, double value) {
  check_mesh(m);
  const auto n = static_cast<Eigen::Index>(m->face_count());
  return DensityOnSurface(std::move(m), Eigen::VectorXd::Constant(n, value));
}

double triangle_inverse_distance_integral(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  // Per-edge closed form with p0 the projection of p onto the plane, w its
  // height, t0 the signed distance from p0 to the edge line (positive
  // inside) and s the offsets of the edge endpoints along the edge:
  //   t0 (asinh(s2/R0) - asinh(s1/R0)) - |w| (atan(t0 s2 / (R0^2 + |w| R2)) - atan(...s1...)),
  // R0^2 = t0^2 + w^2.
  const Vec3 n = (b - a).cross(c - a).normalized();
  const double w = (p - a).dot(n);
  const double aw = std::abs(w);
  const Vec3 p0 = p - w * n;
  const std::array<Vec3, 3> v = {a, b, c};
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3& e0 = v[k];
    const Vec3& e1 = v[(k + 1) % 3];
    const Vec3 t = e1 - e0;
    const double len = t.norm();
    const Vec3 u = t / len;
    const Vec3 m = u.cross(n);
    const double s1 = (e0 - p0).dot(u);
    const double s2 = s1 + len;
    const double t0 = (e0 - p0).dot(m);
    const double r0sq = t0 * t0 + w * w;
    if (r0sq <= 0.0) continue;
    const double r0 = std::sqrt(r0sq);
    total += t0 * (std::asinh(s2 / r0) - std::asinh(s1 / r0));
    if (aw > 0.0) {
      total -= aw * (std::atan(t0 * s2 / (r0sq + aw * (e1 - p).norm())) -
                     std::atan(t0 * s1 / (r0sq + aw * (e0 - p).norm())));
    }
  }
  return total;
}

namespace {

// Barycentric centroids of the 64 sub-triangles of three midpoint
// subdivisions; equal weights.
std::vector<Vec3> subdivision_centroids() {
  std::vector<std::array<Vec3, 3>> tris = {{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}};
  for (int level = 0; level < 3; ++level) {
    std::vector<std::array<Vec3, 3>> next;
    for (const auto& [a, b, c] : tris) {
      const Vec3 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  std::vector<Vec3> out;
  for (const auto& [a, b, c] : tris) out.push_back((a + b + c) / 3.0);
  return out;
}

// Mean over face i of the potential int_{T_j} 1/|x - y| dA(y).
double averaged_panel_potential(const SurfaceMesh& mesh, std::size_t i, std::size_t j) {
  static const std::vector<Vec3> bary = subdivision_centroids();
  const auto& v = mesh.vertices();
  const auto& ti = mesh.triangles()[i];
  const auto& tj = mesh.triangles()[j];
  double sum = 0.0;
  for (const Vec3& q : bary) {
    const Vec3 x = q[0] * v[ti[0]] + q[1] * v[ti[1]] + q[2] * v[ti[2]];
    sum += triangle_inverse_distance_integral(v[tj[0]], v[tj[1]], v[tj[2]], x);
  }
  return sum / static_cast<double>(bary.size());
}

double longest_edge(const SurfaceMesh& mesh, std::size_t f) {
  const auto& v = mesh.vertices();
  const auto& t = mesh.triangles()[f];
  return std::max({(v[t[0]] - v[t[1]]).norm(), (v[t[1]] - v[t[2]]).norm(), (v[t[2]] - v[t[0]]).norm()});
}

}  // namespace

DenseBoundaryOperator assemble_single_layer(MeshPtr mesh) {
  check_mesh(mesh);
  const auto n = static_cast<Eigen::Index>(mesh->face_count());
  const auto& c = mesh->centroid();
  const auto& area = mesh->area();
  const double tiny = 1e-12 * mesh->max_edge();
  std::vector<double> reach(mesh->face_count());
  for (std::size_t f = 0; f < reach.size(); ++f) reach[f] = longest_edge(*mesh, f);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const double r = (c[ui] - c[uj]).norm();
      if (i != j && r <= tiny) {
        throw DegenerateMeshError("layerpot", "faces " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " share a centroid");
      }
      // Near pairs: panel-averaged exact integrals, symmetrized so that
      // A_ij / area_j = A_ji / area_i still holds.
      double g;
      if (r < 2.0 * std::max(reach[ui], reach[uj])) {
        g = 0.5 * (averaged_panel_potential(*mesh, ui, uj) / area[uj] +
                   averaged_panel_potential(*mesh, uj, ui) / area[ui]);
      } else {
        g = 1.0 / r;
      }
      m(i, j) = area[uj] * g / (4.0 * kPi);
      m(j, i) = area[ui] * g / (4.0 * kPi);
    }
  }
  return {std::move(m), KernelTag::single_layer, std::move(mesh)};
}

DenseBoundaryOperator assemble_np_adjoint(MeshPtr mesh, int order) {
  check_mesh(mesh);
  if (order < 0 || order > 3) throw InvalidArgument("layerpot", "K* order must be in {0,1,2,3}");
  const auto n = static_cast<Eigen::Index>(mesh->face_count());
  const auto& c = mesh->centroid();
  const auto& nu = mesh->normal();
  const auto& area = mesh->area();
  const double power = 3.0 - order;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      const Vec3 d = c[i] - c[j];
      const double r = d.norm();
      m(i, j) = area[j] * nu[i].dot(d) / (4.0 * kPi * std::pow(r, power));
    }
  }
  const KernelTag tags[] = {KernelTag::np_adjoint_0, KernelTag::np_adjoint_1, KernelTag::np_adjoint_2,
                            KernelTag::np_adjoint_3};
  return {std::move(m), tags[order], std::move(mesh)};
}

namespace {

DensityOnSurface solve_s0(const DenseBoundaryOperator& s0, double max_condition, double& condition) {
  if (s0.kernel != KernelTag::single_layer) throw InvalidArgument("layerpot", "operator is not S0");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(s0.matrix);
  const double rcond = lu.rcond();
  condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!(condition <= max_condition)) {
    throw NumericalFailure("layerpot", "S0 is singular or ill-conditioned (condition estimate " +
                                           std::to_string(condition) + ")");
  }
  Eigen::VectorXd phi = lu.solve(Eigen::VectorXd::Ones(s0.matrix.rows()));
  if (!phi.allFinite()) throw NumericalFailure("layerpot", "equilibrium solve produced non-finite values");
  return DensityOnSurface(s0.mesh, std::move(phi));
}

}  // namespace

DensityOnSurface equilibrium_density(const DenseBoundaryOperator& s0, double max_condition) {
  double condition = 0.0;
  return solve_s0(s0, max_condition, condition);
}

double capacitance(const DensityOnSurface& phi) {
  check_mesh(phi.mesh);
  const auto& area = phi.mesh->area();
  double c = 0.0;
  for (Eigen::Index i = 0; i < phi.values.size(); ++i) c += area[i] * phi.values[i];
  return c;
}

Equilibrium solve_equilibrium(MeshPtr mesh, double max_condition) {
  Equilibrium eq;
  eq.s0 = assemble_single_layer(std::move(mesh));
  eq.phi = solve_s0(eq.s0, max_condition, eq.condition_estimate);
  eq.capacitance = capacitance(eq.phi);
  return eq;
}

double s0_inner(const Equilibrium& eq, const DensityOnSurface& phi, const DensityOnSurface& psi) {
  check_same_mesh(phi, eq.mesh());
  check_same_mesh(psi, eq.mesh());
  const Eigen::VectorXd s_phi = eq.s0.matrix * phi.values;
  const auto& area = eq.mesh()->area();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s_phi.size(); ++i) sum += area[i] * s_phi[i] * psi.values[i];
  return sum / eq.capacitance;
}

DensityOnSurface project_P(const Equilibrium& eq, const DensityOnSurface& phi) {
  const double coeff = s0_inner(eq, phi, eq.phi);
  return DensityOnSurface(eq.mesh(), coeff * eq.phi.values);
}

DensityOnSurface project_Q(const Equilibrium& eq, const DensityOnSurface& phi) {
  const DensityOnSurface p = project_P(eq, phi);
  return DensityOnSurface(eq.mesh(), phi.values - p.values);
}

double normal_chord_moment(const SurfaceMesh& mesh, const Eigen::VectorXd& phi, double power) {
  const auto n = mesh.face_count();
  const auto& c = mesh.centroid();
  const auto& nu = mesh.normal();
  const auto& area = mesh.area();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vec3 d = c[i] - c[j];
      const double r = d.norm();
      row += area[j] * phi[static_cast<Eigen::Index>(j)] * nu[i].dot(d) * std::pow(r, power);
    }
    total += area[i] * row;
  }
  return total;
}

EtaCoefficients eta_coefficients(const SurfaceMesh& mesh, const DensityOnSurface& phi_eq, double c0) {
  if (!(c0 > 0.0)) throw InvalidArgument("layerpot", "c0 must be > 0");
  const double vol = enclosed_volume(mesh);
  const double cap = capacitance(phi_eq);
  EtaCoefficients eta;
  eta.eta1 = 1.0;
  eta.eta2 = -cap / (4.0 * kPi * c0);
  // eta_l = -(-1)^l l / (|Omega| c0^(l-1) (l+1)!) * int int nu(x).(x-y)|x-y|^(l-2) phi(y)
  auto eta_l = [&](int l, double factorial_lp1) {
    const double sign = (l % 2 == 0) ? -1.0 : 1.0;
    const double pref = sign * l / (vol * std::pow(c0, l - 1) * factorial_lp1);
    return pref * normal_chord_moment(mesh, phi_eq.values, l - 2);
  };
  eta.eta3 = eta_l(3, 24.0);
  eta.eta4 = eta_l(4, 120.0);
  return eta;
}

IdentityResiduals geometric_identities_report(const SurfaceMesh& mesh, const DensityOnSurface& phi_eq) {
  IdentityResiduals r;
  r.volume_target = enclosed_volume(mesh);
  r.moment_target = 3.0 * capacitance(phi_eq) * r.volume_target;
  r.volume_integral = normal_chord_moment(mesh, phi_eq.values, -1.0) / (8.0 * kPi);
  r.moment_integral = normal_chord_moment(mesh, phi_eq.values, 0.0);
  r.volume_residual = std::abs(r.volume_integral - r.volume_target) / r.volume_target;
  r.moment_residual = std::abs(r.moment_integral - r.moment_target) / r.moment_target;
  return r;
}

double null_identity_residual(const DenseBoundaryOperator& k0, const DensityOnSurface& phi) {
  if (k0.kernel != KernelTag::np_adjoint_0) throw InvalidArgument("layerpot", "operator is not K*_0");
  check_same_mesh(phi, k0.mesh);
  const Eigen::VectorXd res = 0.5 * phi.values - k0.matrix * phi.values;
  const auto& area = k0.mesh->area();
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < res.size(); ++i) {
    num += area[i] * res[i] * res[i];
    den += area[i] * phi.values[i] * phi.values[i];
  }
  return std::sqrt(num / den);
}

}  // namespace minnaert
