#include "tableturn/table.hpp"

#include <cmath>
#include <stdexcept>

namespace tableturn {

TableSpec::TableSpec(double ratio, double leg_length)
    : ratio_(ratio), leg_length_(leg_length), beta_(2.0 * std::atan(ratio)) {
  if (!(ratio > 0.0) || !(ratio <= 1.0) || !std::isfinite(ratio))
    throw std::invalid_argument("table ratio must lie in (0, 1]");
  if (!(leg_length >= 0.0) || !std::isfinite(leg_length))
    throw std::invalid_argument("leg length must be nonnegative");
}

double TableSpec::short_side() const { return 2.0 * std::sin(0.5 * beta_); }
double TableSpec::long_side() const { return 2.0 * std::cos(0.5 * beta_); }

namespace {

Frame make_frame(Vec3 u_unit, double azimuth, double tilt) {
  const Vec3 w{-std::sin(azimuth), std::cos(azimuth), 0.0};
  const Vec3 v = cross(u_unit, w);
  const Vec3 e2 = -std::sin(tilt) * v + std::cos(tilt) * w;
  return Frame{u_unit, e2, cross(u_unit, e2)};
}

PlacedTable assemble(const TableSpec& spec, Vec3 a, Vec3 c, Vec3 m,
                     const Frame& frame) {
  const double beta = spec.half_angle();
  const Vec3 offset = std::cos(beta) * frame.u + std::sin(beta) * frame.e2;
  return PlacedTable{a, m + offset, c, m - offset, frame};
}

}  // namespace

PlacedTable place_vertices(const TableSpec& spec, const Pose& pose,
                           const Ground& ground) {
  const double t = pose.diag_param;
  const double ax = t * std::cos(pose.azimuth);
  const double ay = t * std::sin(pose.azimuth);
  const Vec3 a{ax, ay, ground.height(ax, ay)};
  const Vec3 c{-ax, -ay, ground.height(-ax, -ay)};

  const double dz = a.z - c.z;
  const double seat = 4.0 * t * t + dz * dz;
  if (std::abs(seat - 4.0) > 1e-9)
    throw std::invalid_argument("pose does not seat the diagonal: |AC|^2 = " +
                                std::to_string(seat));

  const Vec3 m = 0.5 * (a + c);
  const Frame frame = make_frame(normalized(a - c), pose.azimuth, pose.tilt);
  return assemble(spec, a, c, m, frame);
}

PlacedTable oriented_table(const TableSpec& spec, double incline_angle,
                           double tilt, double azimuth, Vec3 center) {
  const double cphi = std::cos(incline_angle);
  const Vec3 u{cphi * std::cos(azimuth), cphi * std::sin(azimuth),
               std::sin(incline_angle)};
  const Frame frame = make_frame(u, azimuth, tilt);
  return assemble(spec, center + u, center - u, center, frame);
}

double incline(const Vec3& a, const Vec3& c) {
  const double len = distance(a, c);
  if (std::abs(len - 2.0) > 1e-9)
    throw std::invalid_argument("incline: |AC| must be 2, got " + std::to_string(len));
  const double s = 0.5 * (a.z - c.z);
  return std::asin(std::clamp(s, -1.0, 1.0));
}

double segment_slope(const Vec3& p, const Vec3& q) {
  const double dh = std::hypot(p.x - q.x, p.y - q.y);
  const double dz = std::abs(p.z - q.z);
  if (dh == 0.0 && dz == 0.0)
    throw std::invalid_argument("segment_slope: coincident points");
  if (dh == 0.0) return std::numeric_limits<double>::infinity();
  return dz / dh;
}

std::array<Vec3, 4> top_corners(const PlacedTable& table, const TableSpec& spec) {
  Vec3 n = table.frame.n;
  if (std::abs(n.z) < 1e-12)
    throw std::invalid_argument("top_corners: vertical table plane");
  if (n.z < 0.0) n = -n;
  const double len = spec.leg_length();
  return {table.a + len * n, table.b + len * n, table.c + len * n,
          table.d + len * n};
}

}  // namespace tableturn
