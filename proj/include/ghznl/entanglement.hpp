#pragma once

#include <cmath>
#include <stdexcept>

#include "ghznl/state.hpp"

namespace ghznl {

// Only the size of the A side matters for these permutation-symmetric
// states.
struct BipartitionCut {
  int size_a = 1;
};

inline BipartitionCut half_half_cut(int n) { return {(n + 1) / 2}; }

// Negativity (absolute sum of negative partial-transpose eigenvalues,
// unnormalized: 1/2 for the pure GHZ state across every cut).
//
// Partially transposing moves the corner coherence onto a single 2x2 block
// whose diagonal holds the per-string values at Hamming weights a and n-a;
// everything else stays diagonal and nonnegative, so that block is the only
// possible source of negativity.
inline double negativity(const GhzDiagonalState& s, BipartitionCut cut) {
  if (cut.size_a < 1 || cut.size_a > s.n - 1)
    throw std::invalid_argument("negativity: cut size outside [1, n-1]");
  const double da = s.diag_profile[cut.size_a];
  const double db = s.diag_profile[s.n - cut.size_a];
  const double mu = 0.5 * (da + db);
  const double delta = 0.5 * (da - db);
  return std::max(0.0, std::hypot(delta, s.coherence) - mu);
}

inline double concurrence_two_qubit(const GhzDiagonalState& s) {
  if (s.n != 2)
    throw std::invalid_argument("concurrence_two_qubit: two-qubit states only");
  return std::max(0.0,
                  2.0 * (s.diag_profile[0] + std::abs(s.coherence)) - 1.0);
}

struct SeparabilityThreshold {
  double p_star = 1.0;
  bool finite = false;  // false: negativity stays positive for all p < 1
};

// Critical depolarizing strength where the negativity across `cut` hits
// zero, by bisection on coherence - d_cut (strictly decreasing, so the root
// is unique). Phase damping never reaches zero negativity below p = 1.
inline SeparabilityThreshold separability_threshold(int n, NoiseKind kind,
                                                    BipartitionCut cut) {
  if (n < 2)
    throw std::invalid_argument("separability_threshold: party count >= 2");
  if (cut.size_a < 1 || cut.size_a > n - 1)
    throw std::invalid_argument("separability_threshold: bad cut");
  if (kind == NoiseKind::PhaseDamping) return {1.0, false};

  const GhzDiagonalState ghz = make_ghz(n);
  auto gap = [&](double p) {
    const GhzDiagonalState s = apply_channel(ghz, NoiseKind::Depolarizing, p);
    return s.coherence - s.diag_profile[cut.size_a];
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), true};
}

inline SeparabilityThreshold separability_threshold(int n, NoiseKind kind) {
  return separability_threshold(n, kind, half_half_cut(n));
}

struct DecayBound {
  double measured = 0.0;  // half-versus-half negativity at p
  double bound = 0.0;     // (1-p)^n times the noiseless value
};

inline DecayBound decay_bound_check(NoiseKind kind, int n, double p) {
  const GhzDiagonalState ghz = make_ghz(n);
  DecayBound r;
  r.measured = negativity(apply_channel(ghz, kind, p), half_half_cut(n));
  r.bound = std::pow(1.0 - p, n) * negativity(ghz, half_half_cut(n));
  return r;
}

}  // namespace ghznl
