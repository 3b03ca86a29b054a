#pragma once

#include <array>
#include <vector>

namespace conekit {

using Vec3 = std::array<double, 3>;

/// Signed solid angle of the spherical triangle (w0, w1, w2), positive for
/// counterclockwise orientation seen from outside the unit sphere.
double signed_solid_angle(const Vec3& w0, const Vec3& w1, const Vec3& w2);

/// Greatest pairwise angular distance between the three unit vectors.
double spherical_diameter(const Vec3& w0, const Vec3& w1, const Vec3& w2);

/// Subdivided icosahedron on the unit 2-sphere. Watertight, outward
/// oriented: the solid angles of its own triangles sum to 4 pi.
struct SphereMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  int subdivision_level = 0;

  static SphereMesh icosphere(int level);
};

}  // namespace conekit
