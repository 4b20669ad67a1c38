#include "minnaert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <Eigen/Geometry>

#include "minnaert/errors.hpp"

namespace minnaert {

namespace {

double signed_volume(const std::vector<Vec3>& v, const std::vector<std::array<int, 3>>& tris) {
  double vol = 0.0;
  for (const auto& t : tris) vol += v[t[0]].dot(v[t[1]].cross(v[t[2]]));
  return vol / 6.0;
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.size() < 4) throw TopologyError("geometry", "closed surface needs at least 4 faces");
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw InvalidArgument("geometry", "vertex coordinates must be finite");
  }

  // Each directed edge must appear exactly once and its reverse exactly once:
  // closed, two faces per edge, consistent winding.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      if (a < 0 || a >= nv || b < 0 || b >= nv) {
        throw TopologyError("geometry", "face references a vertex out of range");
      }
      if (a == b) throw TopologyError("geometry", "face repeats a vertex");
      if (++directed[{a, b}] > 1) {
        throw TopologyError("geometry", "inconsistent winding or non-manifold edge (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  for (const auto& [edge, count] : directed) {
    if (!directed.count({edge.second, edge.first})) {
      throw TopologyError("geometry", "open surface: edge (" + std::to_string(edge.first) + "," +
                                          std::to_string(edge.second) + ") has one face");
    }
  }

  if (signed_volume(vertices_, triangles_) < 0.0) {
    for (auto& t : triangles_) std::swap(t[1], t[2]);
  }

  const std::size_t nf = triangles_.size();
  area_.resize(nf);
  centroid_.resize(nf);
  normal_.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const Vec3& a = vertices_[triangles_[f][0]];
    const Vec3& b = vertices_[triangles_[f][1]];
    const Vec3& c = vertices_[triangles_[f][2]];
    const Vec3 cr = (b - a).cross(c - a);
    const double twice = cr.norm();
    if (!(twice > 0.0)) throw TopologyError("geometry", "zero-area face " + std::to_string(f));
    area_[f] = 0.5 * twice;
    normal_[f] = cr / twice;
    centroid_[f] = (a + b + c) / 3.0;
  }
  if (!(enclosed_volume(*this) > 0.0)) throw TopologyError("geometry", "enclosed volume is not positive");
}

double SurfaceMesh::total_area() const {
  double s = 0.0;
  for (double a : area_) s += a;
  return s;
}

Vec3 SurfaceMesh::barycenter() const {
  Vec3 s = Vec3::Zero();
  for (std::size_t f = 0; f < face_count(); ++f) s += area_[f] * centroid_[f];
  return s / total_area();
}

double SurfaceMesh::max_edge() const {
  double m = 0.0;
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) m = std::max(m, (vertices_[t[k]] - vertices_[t[(k + 1) % 3]]).norm());
  }
  return m;
}

SurfaceMesh SurfaceMesh::translated(const Vec3& shift) const {
  auto v = vertices_;
  for (auto& p : v) p += shift;
  return SurfaceMesh(std::move(v), triangles_);
}

SurfaceMesh SurfaceMesh::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("geometry", "scale factor must be > 0");
  auto v = vertices_;
  for (auto& p : v) p *= factor;
  return SurfaceMesh(std::move(v), triangles_);
}

SurfaceMesh make_sphere_mesh(double radius, int level) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("geometry", "sphere radius must be > 0");
  }
  if (level < 0 || level > 8) throw InvalidArgument("geometry", "subdivision level must be in [0, 8]");

  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int idx = static_cast<int>(v.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& t : f) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  for (auto& p : v) p *= radius;
  return SurfaceMesh(std::move(v), std::move(f));
}

double enclosed_volume(const SurfaceMesh& mesh) {
  // Divergence theorem with the field x/3; centroid.normal is constant on a
  // flat face, so the one-point rule is exact.
  double vol = 0.0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    vol += mesh.area()[f] * mesh.centroid()[f].dot(mesh.normal()[f]);
  }
  return vol / 3.0;
}

namespace {

// Next non-empty, non-comment line.
bool next_line(std::istream& is, std::string& line, int& lineno) {
  while (std::getline(is, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

SurfaceMesh parse_off(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> TopologyError {
    return TopologyError("geometry", "OFF line " + std::to_string(lineno) + ": " + msg);
  };
  if (!next_line(is, line, lineno)) throw fail("empty file");
  if (line.rfind("OFF", 0) == 0) {
    if (!next_line(is, line, lineno)) throw fail("missing counts");
  }
  long nv = 0, nf = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> nv >> nf) || nv < 4 || nf < 4) throw fail("bad vertex/face counts");
  }
  std::vector<Vec3> verts(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_line(is, line, lineno)) throw fail("truncated vertex list");
    std::istringstream ls(line);
    if (!(ls >> verts[i].x() >> verts[i].y() >> verts[i].z())) throw fail("bad vertex");
  }
  std::vector<std::array<int, 3>> tris(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!next_line(is, line, lineno)) throw fail("truncated face list");
    std::istringstream ls(line);
    int k = 0;
    if (!(ls >> k >> tris[i][0] >> tris[i][1] >> tris[i][2]) || k != 3) {
      throw fail("faces must be triangles \"3 i j k\"");
    }
  }
  return SurfaceMesh(std::move(verts), std::move(tris));
}

SurfaceMesh read_off(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("geometry", "cannot open mesh " + path);
  return parse_off(is);
}

void write_off(std::ostream& os, const SurfaceMesh& mesh) {
  os << "OFF\n" << mesh.vertices().size() << ' ' << mesh.face_count() << " 0\n";
  char buf[96];
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    os << buf;
  }
  for (const auto& t : mesh.triangles()) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off(const std::string& path, const SurfaceMesh& mesh) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("geometry", "cannot open " + path + " for writing");
  write_off(os, mesh);
}

}  // namespace minnaert
