#pragma once

#include <cmath>

namespace tableturn {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Bisection on a bracket [a, b] with f(a) and f(b) on opposite sides of zero
// (either endpoint may sit exactly on it). No derivative or smoothness is
// assumed; continuity alone bounds |f| at the returned point by the bracket
// width times the local variation. Returns the evaluated point with the
// smallest |f|.
template <typename F>
RootResult bisect(F&& f, double a, double b, double fa, double fb,
                  double x_tol, double f_tol, int max_iter = 128) {
  RootResult r;
  if (std::abs(fa) <= f_tol) return {a, fa, 0, true};
  if (std::abs(fb) <= f_tol) return {b, fb, 0, true};

  double best_x = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::abs(fa) < std::abs(fb) ? fa : fb;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    r.iterations = i + 1;
    if (std::abs(fm) < std::abs(best_f)) {
      best_x = mid;
      best_f = fm;
    }
    if (std::abs(fm) <= f_tol) {
      r.converged = true;
      break;
    }
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
    if (b - a <= x_tol) {
      r.converged = true;
      break;
    }
  }
  if (b - a <= x_tol || std::abs(best_f) <= f_tol) r.converged = true;
  r.x = best_x;
  r.fx = best_f;
  return r;
}

}  // namespace tableturn
