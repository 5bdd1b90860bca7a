#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#include "liouville/errors.hpp"

namespace liouville {

struct SolveOptions {
  // Iteration stops once |F(x) - target| <= stop_tol * (1 + |target|).
  double stop_tol = 1e-14;
  // Result is accepted if the final residual is within this bound.
  double accept_tol = 1e-10;
  int max_iter = 100;
};

struct SolveResult {
  double root;
  double residual;
  int iterations;
};

/// Solves F(x) = target for an increasing F on the bracket [lo, hi].
///
/// `eval(x)` returns {F(x), F'(x)}. Newton steps are taken while they stay
/// inside the bracket and shrink the residual fast enough; otherwise the
/// bracket is bisected. Infinite or NaN derivatives fall back to bisection,
/// so F may have a square-root singularity at either end of the bracket.
/// A bracket narrowed to a few ulp around a sign change counts as converged
/// even if the residual exceeds accept_tol.
template <class Eval>
SolveResult solve_increasing(Eval&& eval, double target, double lo, double hi,
                             double guess, const SolveOptions& opt) {
  if (!(lo <= hi)) throw DomainError("solve_increasing: empty bracket");
  const double scale = 1.0 + std::abs(target);
  const double stop = opt.stop_tol * scale;

  double x = (guess >= lo && guess <= hi) ? guess : 0.5 * (lo + hi);
  auto [fx, dfx] = eval(x);
  double g = fx - target;
  double dx_old = hi - lo;
  double dx = dx_old;
  bool force_bisect = false;

  int iter = 0;
  bool collapsed = false;
  bool seen_neg = false, seen_pos = false;
  for (; iter < opt.max_iter; ++iter) {
    if (std::abs(g) <= stop) break;
    if (g < 0) {
      lo = x;
      seen_neg = true;
    } else {
      hi = x;
      seen_pos = true;
    }
    const double xtol = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    if (hi - lo <= xtol) {
      collapsed = seen_neg && seen_pos;
      break;
    }

    const bool newton_ok = !force_bisect && std::isfinite(dfx) && dfx > 0 &&
                           ((x - hi) * dfx - g) * ((x - lo) * dfx - g) < 0 &&
                           std::abs(2 * g) <= std::abs(dx_old * dfx);
    force_bisect = false;
    if (newton_ok) {
      dx_old = dx;
      dx = g / dfx;
      x -= dx;
      if (std::abs(dx) <= xtol) force_bisect = true;
    } else {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    }
    std::tie(fx, dfx) = eval(x);
    g = fx - target;
  }
  if (!collapsed && !(std::abs(g) <= opt.accept_tol * scale)) {
    throw NonConvergence("solve_increasing: residual " + std::to_string(g) + " after " +
                         std::to_string(iter) + " iterations");
  }
  return {x, g, iter};
}

}  // namespace liouville
