#include "sphere_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "errors.hpp"

namespace conekit {

namespace {

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot3(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

double signed_solid_angle(const Vec3& w0, const Vec3& w1, const Vec3& w2) {
  const double numer = dot3(w0, cross3(w1, w2));
  const double denom = 1.0 + dot3(w0, w1) + dot3(w1, w2) + dot3(w2, w0);
  return 2.0 * std::atan2(numer, denom);
}

double spherical_diameter(const Vec3& w0, const Vec3& w1, const Vec3& w2) {
  auto angle = [](const Vec3& a, const Vec3& b) {
    const double c = std::clamp(dot3(a, b), -1.0, 1.0);
    return std::acos(c);
  };
  return std::max({angle(w0, w1), angle(w1, w2), angle(w2, w0)});
}

SphereMesh SphereMesh::icosphere(int level) {
  if (level < 0 || level > 7) {
    fail(Errc::invalid_argument, "subdivision level must be between 0 and 7");
  }
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SphereMesh mesh;
  mesh.subdivision_level = level;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : mesh.vertices) v = normalized(v);
  mesh.triangles = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int step = 0; step < level; ++step) {
    std::unordered_map<uint64_t, int> midpoint;
    auto mid = [&](int i, int j) {
      const uint64_t key = (static_cast<uint64_t>(std::min(i, j)) << 32) |
                           static_cast<uint64_t>(std::max(i, j));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Vec3& a = mesh.vertices[i];
      const Vec3& b = mesh.vertices[j];
      mesh.vertices.push_back(
          normalized({a[0] + b[0], a[1] + b[1], a[2] + b[2]}));
      const int idx = static_cast<int>(mesh.vertices.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.triangles.size() * 4);
    for (const auto& tri : mesh.triangles) {
      const int a = mid(tri[0], tri[1]);
      const int b = mid(tri[1], tri[2]);
      const int c = mid(tri[2], tri[0]);
      next.push_back({tri[0], a, c});
      next.push_back({tri[1], b, a});
      next.push_back({tri[2], c, b});
      next.push_back({a, b, c});
    }
    mesh.triangles = std::move(next);
  }

  // Normalize orientation so the mesh covers the sphere with total solid
  // angle +4 pi.
  double total = 0.0;
  for (const auto& tri : mesh.triangles) {
    total += signed_solid_angle(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                mesh.vertices[tri[2]]);
  }
  if (total < 0.0) {
    for (auto& tri : mesh.triangles) std::swap(tri[1], tri[2]);
  }
  return mesh;
}

}  // namespace conekit
