#include "squidmodes/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "squidmodes/errors.hpp"

namespace squidmodes {

namespace {
bool opposite(double a, double b) { return (a < 0.0) != (b < 0.0); }
}  // namespace

double bisect_secant(const ScalarFn& f, double lo, double hi, double tol) {
  double a = std::min(lo, hi);
  double b = std::max(lo, hi);
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!opposite(fa, fb) || !std::isfinite(fa) || !std::isfinite(fb))
    throw SolverError(SolverErrorKind::kBracketFailure, "no sign change on [" + std::to_string(a) + ", " +
                                                            std::to_string(b) + "]");

  const double coarse = std::max(1e-4 * (b - a), 1e3 * tol);
  while (b - a > coarse) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (opposite(fa, fm)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }

  // Illinois regula falsi: secant steps that always stay inside the bracket.
  int side = 0;
  double c = 0.5 * (a + b);
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = f(c);
    if (fc == 0.0) return c;
    if (opposite(fa, fc)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == +1) fb *= 0.5;
      side = +1;
    }
    if (b - a < tol || std::abs(c - previous) < 0.5 * tol) return c;
    previous = c;
  }
  return c;
}

std::vector<Bracket> sign_changes(const ScalarFn& f, double lo, double hi, int pieces) {
  std::vector<Bracket> out;
  const double h = (hi - lo) / pieces;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= pieces; ++i) {
    const double x1 = (i == pieces) ? hi : lo + i * h;
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1) && (f0 == 0.0 || opposite(f0, f1))) out.push_back({x0, x1});
    x0 = x1;
    f0 = f1;
  }
  return out;
}

std::optional<double> nearest_root(const ScalarFn& f, double seed, double step, double min_x, double max_x,
                                   double tol, int pieces_per_step) {
  for (int grow = 1;; ++grow) {
    const double lo = std::max(seed - grow * step, min_x);
    const double hi = std::min(seed + grow * step, max_x);
    const int pieces = std::max(2, static_cast<int>(std::ceil((hi - lo) / step * pieces_per_step / 2.0)));
    const auto brackets = sign_changes(f, lo, hi, pieces);
    if (!brackets.empty()) {
      std::optional<double> best;
      for (const auto& br : brackets) {
        const double r = bisect_secant(f, br.lo, br.hi, tol);
        if (!best || std::abs(r - seed) < std::abs(*best - seed)) best = r;
      }
      return best;
    }
    if (lo <= min_x && hi >= max_x) return std::nullopt;
  }
}

}  // namespace squidmodes
