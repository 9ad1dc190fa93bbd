#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ghznl/bell.hpp"

namespace ghznl {

// Bounds on the nonlocal content: the minimal weight of the nonsignalling
// part over all splits of the correlations into local + nonsignalling.
struct NonlocalContentBounds {
  int n = 0;
  double p = 0.0;
  double lower = 0.0;
  double upper = 1.0;
};

// Generic violation-based lower bound (value - local)/(ns - local), clamped
// to [0,1]: any correlations hitting the nonsignalling maximum are fully
// nonlocal, and no violation means no information.
inline double lower_bound_generic(double value, double local_bound,
                                  double ns_bound) {
  if (!(ns_bound > local_bound))
    throw std::invalid_argument(
        "lower_bound_generic: nonsignalling bound must exceed local bound");
  const double raw = (value - local_bound) / (ns_bound - local_bound);
  return std::min(1.0, std::max(0.0, raw));
}

// Mermin sandwich for odd n:
//   lower = ((1-p)^n 2^{(n-1)/2} - 1) / (2^{(n-1)/2} - 1), clamped at 0,
//   upper = (1-p)^n (the surviving pure-GHZ weight: the separable rest of
//   the decomposition only contributes local correlations).
// Both depend on the channel only through (1-p)^n, so they apply to
// depolarizing and phase damping alike.
inline NonlocalContentBounds mermin_content_bounds(int n, double p) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("mermin_content_bounds: odd n >= 3 only");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(
        "mermin_content_bounds: noise strength outside [0,1]");
  NonlocalContentBounds b;
  b.n = n;
  b.p = p;
  const double vis = std::pow(1.0 - p, n) * std::exp2(0.5 * (n - 1));
  b.lower = std::max(0.0, (vis - 1.0) / (std::exp2(0.5 * (n - 1)) - 1.0));
  b.upper = std::pow(1.0 - p, n);
  return b;
}

struct SandwichPoint {
  int n = 0;
  double ratio = 0.0;  // lower / upper
};

// lower/upper along odd n: below the transition strength the two bounds
// pinch together, so the ratio climbs monotonically toward 1.
inline std::vector<SandwichPoint> sandwich_convergence(double p, int n_max) {
  const double p_t = 1.0 - 1.0 / std::numbers::sqrt2;
  if (!(p >= 0.0 && p < p_t))
    throw std::invalid_argument(
        "sandwich_convergence: defined only below the transition strength");
  if (n_max < 3)
    throw std::invalid_argument("sandwich_convergence: n_max >= 3");
  std::vector<SandwichPoint> series;
  for (int n = 3; n <= n_max; n += 2) {
    const NonlocalContentBounds b = mermin_content_bounds(n, p);
    series.push_back({n, b.lower / b.upper});
  }
  return series;
}

}  // namespace ghznl
