#pragma once

#include <Eigen/Core>

#include "minnaert/geometry.hpp"

namespace minnaert {

/// Which boundary integral operator a matrix discretizes.
enum class KernelTag { single_layer, np_adjoint_0, np_adjoint_1, np_adjoint_2, np_adjoint_3 };

/// Collocation matrix of a boundary operator: row i is the operator
/// evaluated at centroid i, column j integrates over face j.
struct DenseBoundaryOperator {
  Eigen::MatrixXd matrix;
  KernelTag kernel;
  MeshPtr mesh;

  Eigen::VectorXd apply(const Eigen::VectorXd& density) const { return matrix * density; }
};

/// Piecewise-constant surface density, one value per face.
struct DensityOnSurface {
  MeshPtr mesh;
  Eigen::VectorXd values;

  DensityOnSurface() = default;
  DensityOnSurface(MeshPtr m, Eigen::VectorXd v);
  static DensityOnSurface constant(MeshPtr m, double value);
};

/// Integral of 1/|x - p| over a flat triangle, any p off the triangle's
/// edges (closed form, per-edge asinh and atan terms).
double triangle_inverse_distance_integral(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p);

/// S0 with kernel 1/(4 pi |x-y|). Well separated pairs use the one-point
/// rule area_j / (4 pi |c_i - c_j|); the diagonal and pairs closer than twice
/// the longer edge use the exact panel integral averaged over the target
/// panel, symmetrized. Throws DegenerateMeshError when two
/// distinct faces share a centroid.
DenseBoundaryOperator assemble_single_layer(MeshPtr mesh);

/// K*_l with kernel nu(x).(x-y) / (4 pi |x-y|^(3-l)), l in {0,1,2,3}; the
/// flat-panel diagonal is zero.
DenseBoundaryOperator assemble_np_adjoint(MeshPtr mesh, int order);

/// Dense LU solve of S0 phi = 1. Throws NumericalFailure when the condition
/// estimate exceeds `max_condition`.
DensityOnSurface equilibrium_density(const DenseBoundaryOperator& s0, double max_condition = 1e12);

/// sum_faces area * phi.
double capacitance(const DensityOnSurface& phi);

/// Everything the S0-scalar product and the projections need.
struct Equilibrium {
  DenseBoundaryOperator s0;
  DensityOnSurface phi;
  double capacitance = 0.0;
  double condition_estimate = 0.0;

  const MeshPtr& mesh() const { return s0.mesh; }
};

Equilibrium solve_equilibrium(MeshPtr mesh, double max_condition = 1e12);

/// <phi, psi>_{S0} = C^{-1} sum_i area_i (S0 phi)_i psi_i.
double s0_inner(const Equilibrium& eq, const DensityOnSurface& phi, const DensityOnSurface& psi);

/// Rank-one projection onto the equilibrium density and its complement.
DensityOnSurface project_P(const Equilibrium& eq, const DensityOnSurface& phi);
DensityOnSurface project_Q(const Equilibrium& eq, const DensityOnSurface& phi);

struct EtaCoefficients {
  double eta1 = 1.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double eta4 = 0.0;
};

/// Double-surface centroid rule of
///   int int nu(x).(x-y) |x-y|^p phi(y) dsigma(x) dsigma(y)
/// with the coincident face pair skipped.
double normal_chord_moment(const SurfaceMesh& mesh, const Eigen::VectorXd& phi, double power);

EtaCoefficients eta_coefficients(const SurfaceMesh& mesh, const DensityOnSurface& phi_eq, double c0);

struct IdentityResiduals {
  double volume_integral = 0.0;  // (1/8 pi) int int nu.(x-y)/|x-y| phi
  double volume_target = 0.0;    // |Omega| of the mesh
  double volume_residual = 0.0;  // relative
  double moment_integral = 0.0;  // int int nu.(x-y) phi
  double moment_target = 0.0;    // 3 C |Omega|
  double moment_residual = 0.0;  // relative
};

IdentityResiduals geometric_identities_report(const SurfaceMesh& mesh, const DensityOnSurface& phi_eq);

/// || (1/2 I - K*_0) phi ||_{L2(Gamma)} / || phi ||_{L2(Gamma)}.
double null_identity_residual(const DenseBoundaryOperator& k0, const DensityOnSurface& phi);

}  // namespace minnaert
