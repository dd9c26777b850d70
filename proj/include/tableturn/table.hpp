#pragma once

#include <array>

#include "tableturn/ground.hpp"
#include "tableturn/vec.hpp"

namespace tableturn {

// Rectangular table with diagonal length fixed at 2 (all vertices at
// distance 1 from the center). ratio = short side / long side in (0, 1];
// half_angle is the central angle between adjacent vertices, so the sides
// are 2*sin(half_angle/2) and 2*cos(half_angle/2).
class TableSpec {
 public:
  TableSpec(double ratio, double leg_length);

  double ratio() const { return ratio_; }
  double leg_length() const { return leg_length_; }
  double half_angle() const { return beta_; }
  double short_side() const;
  double long_side() const;

 private:
  double ratio_;
  double leg_length_;
  double beta_;
};

// Placement parameters: azimuth is the angle of the projection of the
// center-to-A ray with the positive x-axis; diag_param is the horizontal
// distance of A from the z-axis; tilt rotates the table about the seated
// diagonal AC, with tilt = -pi/2 putting B straight above it.
struct Pose {
  double azimuth = 0.0;
  double diag_param = 1.0;
  double tilt = 0.0;
};

// Right-handed orthonormal frame of a placed table: u along C->A, e2 the
// in-plane perpendicular, n = u x e2 the plane normal. A,B,C,D run
// counterclockwise when viewed from +n.
struct Frame {
  Vec3 u, e2, n;
};

struct PlacedTable {
  Vec3 a, b, c, d;
  Frame frame;

  Vec3 center() const { return 0.5 * (a + c); }
};

// Seats A and C on the ground at the pose's azimuth/diagonal parameter and
// rotates B, D about the diagonal by the tilt. The pose must satisfy the
// seating identity 4 t^2 + (g_A - g_C)^2 = 4 within 1e-9.
PlacedTable place_vertices(const TableSpec& spec, const Pose& pose,
                           const Ground& ground);

// Purely geometric placement from angles: center at `center`, diagonal at
// the given azimuth and inclination, tilted about it. No ground involved.
PlacedTable oriented_table(const TableSpec& spec, double incline_angle,
                           double tilt, double azimuth = 0.0,
                           Vec3 center = {0.0, 0.0, 0.0});

// Inclination of a seated diagonal: asin((z_A - z_C)/2). Requires |AC| = 2
// within 1e-9.
double incline(const Vec3& a, const Vec3& c);

// Nonnegative slope |dz| / horizontal distance; +infinity for vertical
// segments. Coincident points are rejected.
double segment_slope(const Vec3& p, const Vec3& q);

// Corners of the table top: each vertex offset by leg_length along the plane
// normal oriented upward. Rejects vertical table planes.
std::array<Vec3, 4> top_corners(const PlacedTable& table, const TableSpec& spec);

}  // namespace tableturn
