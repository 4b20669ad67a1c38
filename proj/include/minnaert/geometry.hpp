#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace minnaert {

using Vec3 = Eigen::Vector3d;

/// Closed, consistently wound triangulated surface with per-face data for
/// one-point (centroid) collocation. Immutable once constructed.
class SurfaceMesh {
 public:
  /// Validates closedness and winding, orients faces outward (positive
  /// enclosed volume) and computes face areas, centroids and unit normals.
  /// Throws TopologyError for open or non-manifold input.
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  std::size_t face_count() const { return triangles_.size(); }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<double>& area() const { return area_; }
  const std::vector<Vec3>& centroid() const { return centroid_; }
  const std::vector<Vec3>& normal() const { return normal_; }

  double total_area() const;
  /// Area-weighted mean of the face centroids.
  Vec3 barycenter() const;
  /// Longest edge length.
  double max_edge() const;

  SurfaceMesh translated(const Vec3& shift) const;
  SurfaceMesh scaled(double factor) const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<double> area_;
  std::vector<Vec3> centroid_;
  std::vector<Vec3> normal_;
};

using MeshPtr = std::shared_ptr<const SurfaceMesh>;

/// Icosahedron subdivided `level` times with vertices projected onto the
/// sphere of the given radius about the origin; 20 * 4^level faces.
SurfaceMesh make_sphere_mesh(double radius, int level);

/// (1/3) sum_faces area * (centroid . normal).
double enclosed_volume(const SurfaceMesh& mesh);

/// OFF-style ASCII: optional "OFF" line, "nv nf [ne]", vertex coordinates,
/// then faces as "3 i j k". Comment lines start with '#'.
SurfaceMesh parse_off(std::istream& is);
SurfaceMesh read_off(const std::string& path);
void write_off(std::ostream& os, const SurfaceMesh& mesh);
void write_off(const std::string& path, const SurfaceMesh& mesh);

}  // namespace minnaert
