#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace squidmodes {

using ScalarFn = std::function<double(double)>;

struct Bracket {
  double lo;
  double hi;
};

/// Bisection down to a coarse width, then an Illinois-safeguarded secant
/// polish. f(lo) and f(hi) must differ in sign.
double bisect_secant(const ScalarFn& f, double lo, double hi, double tol = 1e-12);

/// Sub-intervals of [lo, hi] (split into `pieces` equal parts) across which f changes sign.
std::vector<Bracket> sign_changes(const ScalarFn& f, double lo, double hi, int pieces);

/// Grows a window around `seed` by `step` on each side (clipped to
/// [min_x, max_x]) until a sign change appears; returns the refined root
/// closest to `seed`, or nullopt when the window is exhausted.
std::optional<double> nearest_root(const ScalarFn& f, double seed, double step, double min_x, double max_x,
                                   double tol = 1e-12, int pieces_per_step = 32);

}  // namespace squidmodes
