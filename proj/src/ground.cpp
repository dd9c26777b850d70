#include "tableturn/ground.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tableturn/rng.hpp"

namespace tableturn {

namespace detail {

class GroundModel {
 public:
  GroundModel(std::string kind, std::string descriptor,
              std::optional<double> bound, bool exact, bool continuous)
      : kind_(std::move(kind)),
        descriptor_(std::move(descriptor)),
        bound_(bound),
        exact_(exact),
        continuous_(continuous) {}
  virtual ~GroundModel() = default;

  virtual double height(double x, double y) const = 0;

  const std::string& kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  std::optional<double> bound() const { return bound_; }
  bool exact() const { return exact_; }
  bool continuous() const { return continuous_; }

 private:
  std::string kind_;
  std::string descriptor_;
  std::optional<double> bound_;
  bool exact_;
  bool continuous_;
};

namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class FlatModel final : public GroundModel {
 public:
  FlatModel() : GroundModel("flat", "flat", 0.0, true, true) {}
  double height(double, double) const override { return 0.0; }
};

class PlaneModel final : public GroundModel {
 public:
  PlaneModel(double sx, double sy)
      : GroundModel("plane",
                    "plane:sx=" + fmt_g17(sx) + ",sy=" + fmt_g17(sy),
                    std::hypot(sx, sy), true, true),
        sx_(sx),
        sy_(sy) {}
  double height(double x, double y) const override { return sx_ * x + sy_ * y; }

 private:
  double sx_, sy_;
};

class ConeModel final : public GroundModel {
 public:
  ConeModel(double h, double r)
      : GroundModel("cone",
                    "cone:height=" + fmt_g17(h) + ",radius=" + fmt_g17(r),
                    std::abs(h) / r, true, true),
        h_(h),
        r_(r) {}
  double height(double x, double y) const override {
    const double rho = std::hypot(x, y);
    return rho >= r_ ? 0.0 : h_ * (1.0 - rho / r_);
  }

 private:
  double h_, r_;
};

class RidgeModel final : public GroundModel {
 public:
  explicit RidgeModel(double s)
      : GroundModel("ridge", "ridge:s=" + fmt_g17(s), s, true, true), s_(s) {}
  double height(double, double y) const override { return -s_ * std::abs(y); }

 private:
  double s_;
};

class CliffModel final : public GroundModel {
 public:
  CliffModel() : GroundModel("cliff", "cliff", std::nullopt, false, false) {}
  double height(double x, double y) const override {
    double a = std::atan2(y, x);  // atan2(0,0) == 0, so the origin reads 2
    if (a < 0.0) a += 2.0 * M_PI;
    if (a < 0.5 * M_PI) return 2.0;
    if (a < M_PI) return 1.0;
    if (a < 1.5 * M_PI) return 2.0;
    return 1.0;
  }
};

class RadialModel final : public GroundModel {
 public:
  RadialModel(double a, double w)
      : GroundModel("radial", "radial:a=" + fmt_g17(a) + ",w=" + fmt_g17(w),
                    std::abs(a) * 2.0 * M_PI / w, true, true),
        a_(a),
        w_(w) {}
  double height(double x, double y) const override {
    return a_ * std::cos(2.0 * M_PI * std::hypot(x, y) / w_);
  }

 private:
  double a_, w_;
};

struct Bump {
  double cx, cy, a;
};

class BumpsModel final : public GroundModel {
 public:
  BumpsModel(std::string descriptor, std::vector<Bump> bumps, double sigma,
             double bound)
      : GroundModel("bumps", std::move(descriptor), bound, false, true),
        bumps_(std::move(bumps)),
        inv_two_sigma2_(1.0 / (2.0 * sigma * sigma)) {}
  double height(double x, double y) const override {
    double z = 0.0;
    for (const Bump& b : bumps_) {
      const double dx = x - b.cx;
      const double dy = y - b.cy;
      z += b.a * std::exp(-(dx * dx + dy * dy) * inv_two_sigma2_);
    }
    return z;
  }

 private:
  std::vector<Bump> bumps_;
  double inv_two_sigma2_;
};

class GridModel final : public GroundModel {
 public:
  GridModel(GridData d, double bound, std::string descriptor)
      : GroundModel("grid", std::move(descriptor), bound, true, true),
        d_(std::move(d)) {}
  double height(double x, double y) const override {
    const double xmax = d_.x0 + (d_.nx - 1) * d_.dx;
    const double ymax = d_.y0 + (d_.ny - 1) * d_.dy;
    const double xc = std::clamp(x, d_.x0, xmax);
    const double yc = std::clamp(y, d_.y0, ymax);
    double u = (xc - d_.x0) / d_.dx;
    double v = (yc - d_.y0) / d_.dy;
    int i = std::clamp(static_cast<int>(std::floor(u)), 0, d_.nx - 2);
    int j = std::clamp(static_cast<int>(std::floor(v)), 0, d_.ny - 2);
    const double fu = u - i;
    const double fv = v - j;
    const double c00 = at(i, j);
    const double c10 = at(i + 1, j);
    const double c01 = at(i, j + 1);
    const double c11 = at(i + 1, j + 1);
    return c00 * (1.0 - fu) * (1.0 - fv) + c10 * fu * (1.0 - fv) +
           c01 * (1.0 - fu) * fv + c11 * fu * fv;
  }

 private:
  double at(int i, int j) const { return d_.heights[static_cast<std::size_t>(j) * d_.nx + i]; }
  GridData d_;
};

class SumModel final : public GroundModel {
 public:
  SumModel(Ground a, Ground b, std::string descriptor,
           std::optional<double> bound)
      : GroundModel("sum", std::move(descriptor), bound, false,
                    a.continuous() && b.continuous()),
        a_(std::move(a)),
        b_(std::move(b)) {}
  double height(double x, double y) const override {
    return a_.height(x, y) + b_.height(x, y);
  }

 private:
  Ground a_, b_;
};

// The gradient magnitude of a bilinear cell is separately convex in the two
// local coordinates, so its maximum over the closed cell sits at a corner;
// the four corner combinations below enumerate them.
double grid_lipschitz(const GridData& d) {
  double best = 0.0;
  for (int j = 0; j + 1 < d.ny; ++j) {
    for (int i = 0; i + 1 < d.nx; ++i) {
      const double c00 = d.heights[static_cast<std::size_t>(j) * d.nx + i];
      const double c10 = d.heights[static_cast<std::size_t>(j) * d.nx + i + 1];
      const double c01 = d.heights[static_cast<std::size_t>(j + 1) * d.nx + i];
      const double c11 = d.heights[static_cast<std::size_t>(j + 1) * d.nx + i + 1];
      const double gx0 = (c10 - c00) / d.dx;
      const double gx1 = (c11 - c01) / d.dx;
      const double gy0 = (c01 - c00) / d.dy;
      const double gy1 = (c11 - c10) / d.dy;
      best = std::max({best, std::hypot(gx0, gy0), std::hypot(gx0, gy1),
                       std::hypot(gx1, gy0), std::hypot(gx1, gy1)});
    }
  }
  return best;
}

}  // namespace
}  // namespace detail

using detail::GroundModel;

Ground::Ground(std::shared_ptr<const GroundModel> model) : model_(std::move(model)) {}

double Ground::height(double x, double y) const { return model_->height(x, y); }
std::optional<double> Ground::lipschitz_bound() const { return model_->bound(); }
bool Ground::lipschitz_exact() const { return model_->exact(); }
bool Ground::continuous() const { return model_->continuous(); }
const std::string& Ground::kind() const { return model_->kind(); }
const std::string& Ground::descriptor() const { return model_->descriptor(); }

Ground Ground::flat() { return Ground(std::make_shared<detail::FlatModel>()); }

Ground Ground::plane(double sx, double sy) {
  if (!std::isfinite(sx) || !std::isfinite(sy))
    throw std::invalid_argument("plane: slopes must be finite");
  return Ground(std::make_shared<detail::PlaneModel>(sx, sy));
}

Ground Ground::cone(double height, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("cone: radius must be positive");
  if (!std::isfinite(height))
    throw std::invalid_argument("cone: height must be finite");
  return Ground(std::make_shared<detail::ConeModel>(height, radius));
}

Ground Ground::ridge(double slope) {
  if (!(slope > 0.0) || !std::isfinite(slope))
    throw std::invalid_argument("ridge: slope must be positive");
  return Ground(std::make_shared<detail::RidgeModel>(slope));
}

Ground Ground::cliff() { return Ground(std::make_shared<detail::CliffModel>()); }

Ground Ground::radial(double amplitude, double wavelength) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw std::invalid_argument("radial: wavelength must be positive");
  if (!std::isfinite(amplitude))
    throw std::invalid_argument("radial: amplitude must be finite");
  return Ground(std::make_shared<detail::RadialModel>(amplitude, wavelength));
}

Ground Ground::bumps(std::uint64_t seed, int count, double amp, double sigma,
                     std::optional<double> target) {
  if (count < 1) throw std::invalid_argument("bumps: n must be >= 1");
  if (!(amp > 0.0)) throw std::invalid_argument("bumps: amp must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("bumps: sigma must be positive");
  if (target && !(*target > 0.0))
    throw std::invalid_argument("bumps: target must be positive");

  SplitMix64 rng(seed);
  std::vector<detail::Bump> bumps(static_cast<std::size_t>(count));
  for (auto& b : bumps) {
    b.cx = rng.uniform(-2.0, 2.0);
    b.cy = rng.uniform(-2.0, 2.0);
    b.a = rng.uniform(-amp, amp);
  }
  // One bump of amplitude a has max gradient |a| e^{-1/2} / sigma (on the
  // circle of radius sigma); the sum of those maxima bounds the total.
  const double per_amp = std::exp(-0.5) / sigma;
  double raw = 0.0;
  for (const auto& b : bumps) raw += std::abs(b.a) * per_amp;
  double bound = raw;
  if (target) {
    const double scale = raw > 0.0 ? *target / raw : 0.0;
    for (auto& b : bumps) b.a *= scale;
    bound = *target;
  }

  std::string desc = "bumps:seed=" + std::to_string(seed) +
                     ",n=" + std::to_string(count) +
                     ",amp=" + detail::fmt_g17(amp) +
                     ",sigma=" + detail::fmt_g17(sigma);
  if (target) desc += ",target=" + detail::fmt_g17(*target);
  return Ground(std::make_shared<detail::BumpsModel>(std::move(desc),
                                                     std::move(bumps), sigma,
                                                     bound));
}

Ground Ground::grid(GridData data) {
  if (!(data.dx > 0.0) || !(data.dy > 0.0))
    throw std::invalid_argument("grid: spacing must be positive");
  if (data.nx < 2 || data.ny < 2)
    throw std::invalid_argument("grid: dims must be at least 2x2");
  if (data.heights.size() != static_cast<std::size_t>(data.nx) * data.ny)
    throw std::invalid_argument("grid: heights size does not match dims");
  for (double h : data.heights)
    if (!std::isfinite(h)) throw std::invalid_argument("grid: non-finite height");
  const double bound = detail::grid_lipschitz(data);
  std::string desc = "grid:" + std::to_string(data.nx) + "x" + std::to_string(data.ny);
  return Ground(std::make_shared<detail::GridModel>(std::move(data), bound,
                                                    std::move(desc)));
}

Ground Ground::sum(Ground a, Ground b) {
  std::optional<double> bound;
  if (a.lipschitz_bound() && b.lipschitz_bound())
    bound = *a.lipschitz_bound() + *b.lipschitz_bound();
  std::string desc = "sum(" + a.descriptor() + ";" + b.descriptor() + ")";
  return Ground(std::make_shared<detail::SumModel>(std::move(a), std::move(b),
                                                   std::move(desc), bound));
}

namespace {

// Recursive-descent parser for the descriptor grammar.
class DescriptorParser {
 public:
  explicit DescriptorParser(const std::string& text) : s_(text) {}

  Ground parse() {
    Ground g = parse_spec();
    if (pos_ != s_.size()) fail("unexpected trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("ground descriptor: " + msg + " at position " +
                         std::to_string(pos_),
                     pos_);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string parse_ident() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                         s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected identifier");
    return s_.substr(start, pos_ - start);
  }

  double parse_real() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::uint64_t as_integer(double v, const std::string& key) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
      fail("key '" + key + "' requires a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }

  Ground parse_spec() {
    const std::size_t kind_pos = pos_;
    std::string kind = parse_ident();
    if (kind == "sum") {
      expect('(');
      Ground acc = parse_spec();
      expect(';');
      acc = Ground::sum(std::move(acc), parse_spec());
      while (peek() == ';') {
        ++pos_;
        acc = Ground::sum(std::move(acc), parse_spec());
      }
      expect(')');
      return acc;
    }

    std::map<std::string, double> kv;
    if (peek() == ':') {
      ++pos_;
      while (true) {
        const std::size_t key_pos = pos_;
        std::string key = parse_ident();
        expect('=');
        double value = parse_real();
        if (kv.count(key)) {
          pos_ = key_pos;
          fail("duplicate key '" + key + "'");
        }
        kv[key] = value;
        if (peek() != ',') break;
        ++pos_;
      }
    }

    auto take = [&](const std::string& key) -> std::optional<double> {
      auto it = kv.find(key);
      if (it == kv.end()) return std::nullopt;
      const double v = it->second;
      kv.erase(it);
      return v;
    };
    auto require = [&](const std::string& key) -> double {
      auto v = take(key);
      if (!v) fail("kind '" + kind + "' requires key '" + key + "'");
      return *v;
    };
    auto finish = [&](Ground g) -> Ground {
      if (!kv.empty()) fail("unknown key '" + kv.begin()->first + "' for kind '" + kind + "'");
      return g;
    };

    try {
      if (kind == "flat") return finish(Ground::flat());
      if (kind == "cliff") return finish(Ground::cliff());
      if (kind == "plane") {
        const double sx = take("sx").value_or(0.0);
        const double sy = take("sy").value_or(0.0);
        return finish(Ground::plane(sx, sy));
      }
      if (kind == "cone") {
        const double h = require("height");
        const double r = require("radius");
        return finish(Ground::cone(h, r));
      }
      if (kind == "ridge") {
        return finish(Ground::ridge(require("s")));
      }
      if (kind == "radial") {
        const double a = require("a");
        const double w = require("w");
        return finish(Ground::radial(a, w));
      }
      if (kind == "bumps") {
        const std::uint64_t seed = as_integer(require("seed"), "seed");
        const int n = static_cast<int>(as_integer(take("n").value_or(12.0), "n"));
        const double amp = take("amp").value_or(1.0);
        const double sigma = take("sigma").value_or(0.5);
        std::optional<double> target = take("target");
        return finish(Ground::bumps(seed, n, amp, sigma, target));
      }
    } catch (const std::invalid_argument& e) {
      pos_ = kind_pos;
      fail(e.what());
    }
    pos_ = kind_pos;
    fail("unknown ground kind '" + kind + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ground parse_ground(const std::string& spec) {
  // Outer whitespace is tolerated; the grammar itself has none.
  std::size_t b = spec.find_first_not_of(" \t\r\n");
  std::size_t e = spec.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) throw ParseError("ground descriptor: empty input", 0);
  std::string trimmed = spec.substr(b, e - b + 1);
  DescriptorParser p(trimmed);
  return p.parse();
}

Ground load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("grid file: cannot open '" + path + "'", 0);

  auto next_line = [&in](std::string& line) -> bool {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  std::string line;
  if (!next_line(line)) throw ParseError("grid file: missing header", 1);
  std::istringstream header(line);
  GridData d;
  double nxf = 0.0, nyf = 0.0;
  if (!(header >> d.x0 >> d.y0 >> d.dx >> d.dy >> nxf >> nyf))
    throw ParseError("grid file: malformed header (need x0 y0 dx dy nx ny)", 1);
  std::string extra;
  if (header >> extra)
    throw ParseError("grid file: malformed header (trailing tokens)", 1);
  if (nxf != std::floor(nxf) || nyf != std::floor(nyf) || nxf < 2 || nyf < 2)
    throw ParseError("grid file: dims must be integers >= 2", 1);
  if (!(d.dx > 0.0) || !(d.dy > 0.0))
    throw ParseError("grid file: spacing must be positive", 1);
  d.nx = static_cast<int>(nxf);
  d.ny = static_cast<int>(nyf);
  d.heights.reserve(static_cast<std::size_t>(d.nx) * d.ny);

  for (int j = 0; j < d.ny; ++j) {
    if (!next_line(line))
      throw ParseError("grid file: expected " + std::to_string(d.ny) +
                           " data rows, got " + std::to_string(j),
                       static_cast<std::size_t>(j + 2));
    std::istringstream row(line);
    for (int i = 0; i < d.nx; ++i) {
      double h = 0.0;
      if (!(row >> h))
        throw ParseError("grid file: row " + std::to_string(j + 1) + " has fewer than " +
                             std::to_string(d.nx) + " values",
                         static_cast<std::size_t>(j + 2));
      if (!std::isfinite(h))
        throw ParseError("grid file: non-finite height in row " + std::to_string(j + 1),
                         static_cast<std::size_t>(j + 2));
      d.heights.push_back(h);
    }
    double surplus = 0.0;
    if (row >> surplus)
      throw ParseError("grid file: row " + std::to_string(j + 1) + " has more than " +
                           std::to_string(d.nx) + " values",
                       static_cast<std::size_t>(j + 2));
  }
  return Ground::grid(std::move(d));
}

double estimate_lipschitz(const Ground& ground, const Region& region,
                          long samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("estimate_lipschitz: samples must be >= 2");
  if (!(region.x_max > region.x_min) || !(region.y_max > region.y_min))
    throw std::invalid_argument("estimate_lipschitz: degenerate region");

  const double diam = std::hypot(region.x_max - region.x_min,
                                 region.y_max - region.y_min);
  auto clamp_pt = [&](double& x, double& y) {
    x = std::clamp(x, region.x_min, region.x_max);
    y = std::clamp(y, region.y_min, region.y_max);
  };

  double best = 0.0;
  for (long i = 0; i < samples; ++i) {
    SplitMix64 rng(substream(seed, static_cast<std::uint64_t>(i)));
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double u4 = rng.uniform();

    double px = region.x_min + (region.x_max - region.x_min) * u1;
    double py = region.y_min + (region.y_max - region.y_min) * u2;
    double qx = 0.0, qy = 0.0;
    switch (i & 3) {
      case 0:  // long-range pair
        qx = region.x_min + (region.x_max - region.x_min) * u3;
        qy = region.y_min + (region.y_max - region.y_min) * u4;
        break;
      case 1: {  // short pair, random direction, log-uniform length
        const double psi = 2.0 * M_PI * u3;
        const double d = diam * std::exp(std::log(1e-4) + (std::log(0.1) - std::log(1e-4)) * u4);
        qx = px + d * std::cos(psi);
        qy = py + d * std::sin(psi);
        break;
      }
      case 2: {  // short pair along one of the 8 principal directions
        const double psi = static_cast<double>((i / 4) % 8) * (M_PI / 8.0);
        const double d = 1e-3 * diam * (0.5 + u3);
        qx = px + d * std::cos(psi);
        qy = py + d * std::sin(psi);
        break;
      }
      case 3: {  // pull toward the origin along the ray through P
        const double rho = std::hypot(px, py);
        const double d = 1e-2 * diam * (0.1 + u3);
        const double s = rho > 1e-12 ? std::max(0.0, 1.0 - d / rho) : 0.0;
        qx = px * s;
        qy = py * s;
        break;
      }
    }
    clamp_pt(qx, qy);
    const double dist = std::hypot(px - qx, py - qy);
    if (dist < 1e-15) continue;
    const double dg = std::abs(ground.height(px, py) - ground.height(qx, qy));
    best = std::max(best, dg / dist);
  }
  return best;
}

}  // namespace tableturn
