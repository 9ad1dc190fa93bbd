#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghznl/combinatorics.hpp"

namespace ghznl {

enum class NoiseKind { Depolarizing, PhaseDamping };

inline const char* noise_name(NoiseKind kind) {
  return kind == NoiseKind::Depolarizing ? "depolarizing" : "phase-damping";
}

// N-qubit state that is diagonal in the computational basis except for a
// single coherence between |0...0> and |1...1>. Both noise channels keep
// GHZ states inside this family, and the diagonal stays permutation
// symmetric, so one value per Hamming weight suffices:
//
//   diag_profile[k] = value of EVERY diagonal element whose basis string
//                     has Hamming weight k (per string, not aggregated);
//   coherence       = <0...0| rho |1...1>, real and nonnegative here.
//
// The C(n,k) multiplicities enter at trace/expectation time.
struct GhzDiagonalState {
  int n = 0;
  std::vector<double> diag_profile;  // length n + 1
  double coherence = 0.0;
};

inline double trace(const GhzDiagonalState& s) {
  double sum = 0.0;
  for (int k = 0; k <= s.n; ++k) sum += binomial(s.n, k) * s.diag_profile[k];
  return sum;
}

inline GhzDiagonalState make_ghz(int n) {
  if (n < 2) throw std::invalid_argument("make_ghz: party count must be >= 2");
  GhzDiagonalState s;
  s.n = n;
  s.diag_profile.assign(n + 1, 0.0);
  s.diag_profile.front() = s.diag_profile.back() = 0.5;
  s.coherence = 0.5;
  return s;
}

inline bool is_pure_ghz(const GhzDiagonalState& s, double tol = 1e-12) {
  if (s.n < 2 || static_cast<int>(s.diag_profile.size()) != s.n + 1)
    return false;
  if (std::abs(s.diag_profile.front() - 0.5) > tol) return false;
  if (std::abs(s.diag_profile.back() - 0.5) > tol) return false;
  for (int k = 1; k < s.n; ++k)
    if (std::abs(s.diag_profile[k]) > tol) return false;
  return std::abs(s.coherence - 0.5) <= tol;
}

// Action of n independent single-qubit channels on the GHZ state, in closed
// form. The coherence picks up (1-p)^n for both channels. Phase damping
// leaves the diagonal untouched; depolarization flips each qubit's
// population with probability p/2, giving the binomial two-sided profile.
inline GhzDiagonalState apply_channel(const GhzDiagonalState& ghz,
                                      NoiseKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("apply_channel: noise strength outside [0,1]");
  if (!is_pure_ghz(ghz))
    throw std::invalid_argument(
        "apply_channel: input must be a pure GHZ state");
  const int n = ghz.n;
  GhzDiagonalState out;
  out.n = n;
  out.diag_profile.assign(n + 1, 0.0);
  out.coherence = 0.5 * std::pow(1.0 - p, n);
  if (kind == NoiseKind::PhaseDamping) {
    out.diag_profile.front() = out.diag_profile.back() = 0.5;
  } else {
    const double t = 0.5 * p;  // per-qubit population flip probability
    for (int k = 0; k <= n; ++k)
      out.diag_profile[k] = 0.5 * (std::pow(t, k) * std::pow(1.0 - t, n - k) +
                                   std::pow(1.0 - t, k) * std::pow(t, n - k));
  }
  return out;
}

// Split of a decohered GHZ state into its surviving pure-GHZ fraction and a
// separable computational-basis-diagonal rest,
//
//   rho(p) = w |GHZ><GHZ| + (1 - w) rho_sep,   w = (1-p)^n.
//
// The GHZ term carries the entire coherence, so rho_sep is fixed by the
// diagonal alone. At p = 0 the split degenerates (w = 1, no residual).
struct PureSeparableSplit {
  double ghz_weight = 1.0;
  std::optional<std::vector<double>> residual_profile;
};

inline PureSeparableSplit split_pure_separable(const GhzDiagonalState& s,
                                               double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(
        "split_pure_separable: noise strength outside [0,1]");
  const int n = s.n;
  const double w = std::pow(1.0 - p, n);
  if (std::abs(s.coherence - 0.5 * w) > 1e-12)
    throw std::invalid_argument(
        "split_pure_separable: state is not a strength-p channel output");
  if (p == 0.0) return {1.0, std::nullopt};

  std::vector<double> residual(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double ghz_part = (k == 0 || k == n) ? 0.5 : 0.0;
    double r = (s.diag_profile[k] - w * ghz_part) / (1.0 - w);
    if (r < 0.0) {
      if (r < -1e-12)
        throw std::logic_error("split_pure_separable: negative residual");
      r = 0.0;
    }
    residual[k] = r;
  }
  return {w, std::move(residual)};
}

// Inverse of split_pure_separable; used to verify the split is lossless.
inline GhzDiagonalState recombine(const PureSeparableSplit& split, int n) {
  GhzDiagonalState s;
  s.n = n;
  s.diag_profile.assign(n + 1, 0.0);
  const double w = split.ghz_weight;
  s.coherence = 0.5 * w;
  s.diag_profile.front() = s.diag_profile.back() = 0.5 * w;
  if (split.residual_profile) {
    for (int k = 0; k <= n; ++k)
      s.diag_profile[k] += (1.0 - w) * (*split.residual_profile)[k];
  }
  return s;
}

}  // namespace ghznl
