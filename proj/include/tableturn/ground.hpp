#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tableturn {

// Thrown by parse_ground and load_grid. position is a byte offset into the
// descriptor string (or a 1-based line number for grid files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct GridData {
  double x0 = 0.0, y0 = 0.0;
  double dx = 1.0, dy = 1.0;
  int nx = 0, ny = 0;
  std::vector<double> heights;  // row-major: heights[j*nx + i] at (x0 + i*dx, y0 + j*dy)
};

namespace detail {
class GroundModel;
}

// Immutable height field g: R^2 -> R together with a declared Lipschitz
// bound (possibly unknown) and a continuity flag. Copies share the model;
// evaluation is pure and safe under unrestricted concurrent use.
class Ground {
 public:
  // Height of the ground surface above (x, y). Total for finite inputs;
  // grids clamp queries outside their domain to the nearest boundary value.
  double height(double x, double y) const;

  // Declared upper bound on |g(P)-g(Q)|/|P-Q|, or nullopt when unknown.
  std::optional<double> lipschitz_bound() const;

  // True when the declared bound is the optimal constant, not just an upper
  // bound (analytic builtins and bilinear grids).
  bool lipschitz_exact() const;

  bool continuous() const;

  const std::string& kind() const;

  // Canonical descriptor. Re-parses to an identical ground for every kind
  // produced by parse_ground.
  const std::string& descriptor() const;

  static Ground flat();
  static Ground plane(double sx, double sy);
  // Hill over the disc of the given radius, apex height above the origin,
  // coinciding with the xy-plane outside.
  static Ground cone(double height, double radius);
  // Crest along the x-axis: g = -slope * |y|.
  static Ground ridge(double slope);
  // Four quadrants alternating between heights 2 and 1; the only
  // discontinuous builtin.
  static Ground cliff();
  // Rotationally symmetric: g = amplitude * cos(2*pi*rho / wavelength).
  static Ground radial(double amplitude, double wavelength);
  // Sum of `count` Gaussian bumps with centers in [-2,2]^2 and signed
  // amplitudes in [-amp, amp], drawn from the seeded splitmix64 stream.
  // The declared bound sums the per-bump maxima; when `target` is given the
  // amplitudes are rescaled at construction so that the bound equals it.
  static Ground bumps(std::uint64_t seed, int count, double amp, double sigma,
                      std::optional<double> target = std::nullopt);
  static Ground grid(GridData data);
  static Ground sum(Ground a, Ground b);

 private:
  explicit Ground(std::shared_ptr<const detail::GroundModel> model);
  std::shared_ptr<const detail::GroundModel> model_;
};

// Grammar: `kind` or `kind:key=val(,key=val)*`, plus the combinator
// `sum(specA;specB)`. Reals accept decimal or scientific notation.
Ground parse_ground(const std::string& spec);

// Grid file: header line `x0 y0 dx dy nx ny`, then ny lines of nx heights.
// LF or CRLF line endings.
Ground load_grid(const std::string& path);

struct Region {
  double x_min = -2.0, y_min = -2.0;
  double x_max = 2.0, y_max = 2.0;
};

// Empirical lower bound on the Lipschitz constant: max of |dg|/|dP| over a
// deterministic sampling schedule mixing long-range, short random-direction,
// principal-direction and origin-radial pairs. Sample i is derived from a
// substream keyed by i alone, so the result is monotone nondecreasing in the
// sample count.
double estimate_lipschitz(const Ground& ground, const Region& region,
                          long samples, std::uint64_t seed = 0x11A2B3C4D5ull);

}  // namespace tableturn
