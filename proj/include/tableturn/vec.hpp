#pragma once

#include <cmath>

namespace tableturn {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator-() const { return {-x, -y, -z}; }

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend Vec3 operator*(Vec3 v, double s) { return s * v; }
  friend Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y,
          a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double horizontal_norm(Vec3 v) { return std::hypot(v.x, v.y); }
inline Vec3 normalized(Vec3 v) { return v / norm(v); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

}  // namespace tableturn
