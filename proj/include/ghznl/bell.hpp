#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "ghznl/combinatorics.hpp"
#include "ghznl/dense.hpp"
#include "ghznl/state.hpp"

namespace ghznl {

// Single-qubit +-1-eigenvalue observable as a unit Bloch vector.
struct Observable {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline constexpr Observable kObsX{1.0, 0.0, 0.0};
inline constexpr Observable kObsY{0.0, 1.0, 0.0};
inline constexpr Observable kObsZ{0.0, 0.0, 1.0};

inline void check_unit(const Observable& o) {
  const double norm = std::sqrt(o.x * o.x + o.y * o.y + o.z * o.z);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("Observable: Bloch vector must be unit norm");
}

// O_{i0} and O_{i1} for one party
using SettingPair = std::array<Observable, 2>;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// <Z^{x s} x I^{x (n-s)}> for any weight-s Z string (all agree by
// permutation symmetry): sum_k d_k sum_j (-1)^j C(s,j) C(n-s, k-j).
inline double pauli_parity_expectation(const GhzDiagonalState& s,
                                       int support_size) {
  if (support_size < 0 || support_size > s.n)
    throw std::invalid_argument("pauli_parity_expectation: bad support size");
  KahanSum acc;
  for (int k = 0; k <= s.n; ++k) {
    if (s.diag_profile[k] == 0.0) continue;
    double kraw = 0.0;
    for (int j = std::max(0, k - (s.n - support_size));
         j <= std::min(support_size, k); ++j)
      kraw += ((j & 1) ? -1.0 : 1.0) * binomial(support_size, j) *
              binomial(s.n - support_size, k - j);
    acc.add(s.diag_profile[k] * kraw);
  }
  return acc.sum;
}

// Full correlation Tr[rho O_1 x ... x O_n]. Expanding the product over
// Pauli strings, only two kinds survive on this state family: the all-Z
// string against the diagonal and the all-equatorial strings against the
// corner coherence, giving
//
//   C = (prod_i z_i) <Z...Z> + 2c Re[ prod_i (x_i + i y_i) ].
inline double correlation(const GhzDiagonalState& s,
                          std::span<const Observable> obs) {
  if (static_cast<int>(obs.size()) != s.n)
    throw std::invalid_argument("correlation: need one observable per party");
  double z_prod = 1.0;
  Complex xy_prod{1.0, 0.0};
  for (const Observable& o : obs) {
    check_unit(o);
    z_prod *= o.z;
    xy_prod *= Complex{o.x, o.y};
  }
  double value = 2.0 * s.coherence * xy_prod.real();
  if (z_prod != 0.0) value += z_prod * pauli_parity_expectation(s, s.n);
  return value;
}

// Same correlation from the dense matrix; the oracle path.
inline double correlation_dense(const DenseState& s,
                                std::span<const Observable> obs) {
  if (static_cast<int>(obs.size()) != s.n)
    throw std::invalid_argument("correlation_dense: observable count mismatch");
  const std::size_t dim = s.dim();
  std::vector<Mat2> single(s.n);
  for (int q = 0; q < s.n; ++q) {
    const Observable& o = obs[q];
    check_unit(o);
    single[q] = Mat2{Complex{o.z, 0.0}, Complex{o.x, -o.y},
                     Complex{o.x, o.y}, Complex{-o.z, 0.0}};
  }
  Complex tr = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Complex m{1.0, 0.0};  // M[c][r] of the product operator
      for (int q = 0; q < s.n; ++q)
        m *= single[q][((c >> q) & 1) * 2 + ((r >> q) & 1)];
      tr += s.at(r, c) * m;
    }
  return tr.real();
}

// ---------------------------------------------------------------------------
// Bell functionals
// ---------------------------------------------------------------------------

enum class FunctionalKind { Generic, Chsh, Mermin };

// I = sum_x g(x) C(x) over setting strings x in {0,1}^n (bit i = party i's
// setting), with its local, nonsignalling and algebraic bounds.
struct BellFunctional {
  int n = 0;
  FunctionalKind kind = FunctionalKind::Generic;
  std::function<double(std::uint32_t)> g;
  double local_bound = 0.0;
  double ns_bound = 0.0;
  double abs_sum = 0.0;
};

inline BellFunctional chsh_functional() {
  BellFunctional f;
  f.n = 2;
  f.kind = FunctionalKind::Chsh;
  f.g = [](std::uint32_t x) { return ((x & 1u) && (x & 2u)) ? -1.0 : 1.0; };
  f.local_bound = 2.0;
  f.ns_bound = 4.0;
  f.abs_sum = 4.0;
  return f;
}

inline double mermin_local_bound(int n) {
  return (n % 2) ? std::exp2(0.5 * (n - 1)) : std::exp2(0.5 * n);
}

// g(x) = cos(pi/2 sum_i x_i): +1 / -1 on even-weight strings, 0 on odd.
// The nonsignalling bound is the algebraic maximum sum|g| = 2^{n-1}.
inline BellFunctional mermin_functional(int n) {
  if (n < 3)
    throw std::invalid_argument("mermin_functional: needs n >= 3");
  BellFunctional f;
  f.n = n;
  f.kind = FunctionalKind::Mermin;
  f.g = [](std::uint32_t x) {
    const int w = std::popcount(x);
    if (w & 1) return 0.0;
    return (w % 4 == 0) ? 1.0 : -1.0;
  };
  f.local_bound = mermin_local_bound(n);
  f.ns_bound = std::exp2(n - 1);
  f.abs_sum = std::exp2(n - 1);
  return f;
}

inline std::vector<SettingPair> xy_settings(int n) {
  return std::vector<SettingPair>(n, SettingPair{kObsX, kObsY});
}

// The two-qubit measurement pairs quoted for the maximal CHSH value:
// party 1 {-X, Z}, party 2 {(X-Z)/sqrt2, (X+Z)/sqrt2}. Under the
// (-1)^{x1 x2} coefficients these realize the magnitude 2*sqrt(2) with a
// negative sign (relabeling one party's outcomes flips it).
inline std::vector<SettingPair> chsh_reference_settings() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {SettingPair{Observable{-1.0, 0.0, 0.0}, Observable{0.0, 0.0, 1.0}},
          SettingPair{Observable{r, 0.0, -r}, Observable{r, 0.0, r}}};
}

inline bool is_xy_settings(std::span<const SettingPair> settings) {
  for (const SettingPair& pair : settings) {
    if (std::abs(pair[0].x - 1.0) > 1e-12 || std::abs(pair[0].y) > 1e-12 ||
        std::abs(pair[0].z) > 1e-12)
      return false;
    if (std::abs(pair[1].x) > 1e-12 || std::abs(pair[1].y - 1.0) > 1e-12 ||
        std::abs(pair[1].z) > 1e-12)
      return false;
  }
  return true;
}

// I = sum_x g(x) C(x). Enumerates the 2^n setting strings with compensated
// summation; for the Mermin functional with the canonical X/Y settings at
// n >= 20 the closed form 2 c 2^{n-1} replaces the enumeration (both paths
// agree where both run).
inline double bell_value(const BellFunctional& f, const GhzDiagonalState& s,
                         std::span<const SettingPair> settings) {
  if (f.n != s.n || static_cast<int>(settings.size()) != s.n)
    throw std::invalid_argument("bell_value: party count mismatch");
  if (f.kind == FunctionalKind::Mermin && s.n >= 20) {
    if (!is_xy_settings(settings))
      throw std::invalid_argument(
          "bell_value: closed form needs X/Y settings for n >= 20");
    return 2.0 * s.coherence * std::exp2(s.n - 1);
  }
  if (s.n > 24)
    throw std::invalid_argument("bell_value: enumeration capped at n = 24");
  const double e_z = pauli_parity_expectation(s, s.n);
  KahanSum acc;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << s.n); ++x) {
    const double gx = f.g(x);
    if (gx == 0.0) continue;
    double z_prod = 1.0;
    Complex xy_prod{1.0, 0.0};
    for (int i = 0; i < s.n; ++i) {
      const Observable& o = settings[i][(x >> i) & 1];
      z_prod *= o.z;
      xy_prod *= Complex{o.x, o.y};
    }
    double c = 2.0 * s.coherence * xy_prod.real();
    if (z_prod != 0.0) c += z_prod * e_z;
    acc.add(gx * c);
  }
  return acc.sum;
}

// Oracle route: the same sum with every correlation taken as a dense trace.
inline double bell_value_dense(const BellFunctional& f, const DenseState& s,
                               std::span<const SettingPair> settings) {
  if (f.n != s.n || static_cast<int>(settings.size()) != s.n)
    throw std::invalid_argument("bell_value_dense: party count mismatch");
  KahanSum acc;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << s.n); ++x) {
    const double gx = f.g(x);
    if (gx == 0.0) continue;
    std::vector<Observable> obs(s.n);
    for (int i = 0; i < s.n; ++i) obs[i] = settings[i][(x >> i) & 1];
    acc.add(gx * correlation_dense(s, obs));
  }
  return acc.sum;
}

// Maximum of the functional over deterministic local strategies, by
// exhausting the 4^{n-1} assignments of parties 2..n; party 1's optimal
// choice is |h(0)| + |h(1)|. Capped at n = 16.
inline double deterministic_local_bound(const BellFunctional& f) {
  if (f.n < 2 || f.n > 16)
    throw std::length_error("deterministic_local_bound: supported for 2 <= n <= 16");
  const int n = f.n;
  const std::uint64_t strategies = std::uint64_t{1} << (2 * (n - 1));
  const std::uint32_t dim = std::uint32_t{1} << n;
  double best = 0.0;
  for (std::uint64_t strat = 0; strat < strategies; ++strat) {
    double h[2] = {0.0, 0.0};
    for (std::uint32_t x = 0; x < dim; ++x) {
      const double gx = f.g(x);
      if (gx == 0.0) continue;
      double prod = 1.0;
      for (int i = 1; i < n; ++i) {
        const int setting = (x >> i) & 1;
        const int out = (strat >> (2 * (i - 1) + setting)) & 1;
        prod *= out ? -1.0 : 1.0;
      }
      h[x & 1] += gx * prod;
    }
    best = std::max(best, std::abs(h[0]) + std::abs(h[1]));
  }
  return best;
}

// ---------------------------------------------------------------------------
// CHSH and Mermin reports
// ---------------------------------------------------------------------------

// Maximal CHSH value 2 sqrt(M), M the sum of the two largest eigenvalues of
// T^t T, with T the Pauli correlation matrix of the dense form.
inline double chsh_max(const GhzDiagonalState& s) {
  if (s.n != 2) throw std::invalid_argument("chsh_max: two-qubit states only");
  const auto t = horodecki_tmatrix(make_dense(s));
  std::vector<Complex> m(9, Complex{});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += t[k][i] * t[k][j];
      m[i * 3 + j] = acc;
    }
  const std::vector<double> ev = hermitian_eigenvalues(std::move(m), 3);
  return 2.0 * std::sqrt(ev[1] + ev[2]);
}

struct MerminReport {
  int n = 0;
  double p = 0.0;
  double value = 0.0;       // (1-p)^n 2^{n-1}, X/Y settings
  double visibility = 0.0;  // value / local bound
  double p_c = 0.0;         // violation threshold
  double p_t = 0.0;         // visibility growth/decay transition, 1 - 1/sqrt2
  bool even_variant = false;
};

// Closed-form Mermin data for the decohered GHZ state. The odd-n critical
// strength is 1 - (1/sqrt2)^{(n-1)/n}; for even n the local bound 2^{n/2}
// gives 1 - (1/sqrt2)^{(n-2)/n} and the report is flagged as the even-n
// variant.
inline MerminReport mermin_report(int n, double p) {
  if (n < 3)
    throw std::invalid_argument("mermin_report: needs n >= 3 (CHSH covers n=2)");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mermin_report: noise strength outside [0,1]");
  MerminReport r;
  r.n = n;
  r.p = p;
  r.even_variant = (n % 2 == 0);
  const double local = mermin_local_bound(n);
  r.visibility = std::pow(1.0 - p, n) *
                 (r.even_variant ? std::exp2(0.5 * (n - 2)) : std::exp2(0.5 * (n - 1)));
  r.value = r.visibility * local;
  const double exponent = r.even_variant ? (n - 2.0) / n : (n - 1.0) / n;
  r.p_c = 1.0 - std::pow(1.0 / std::numbers::sqrt2, exponent);
  r.p_t = 1.0 - 1.0 / std::numbers::sqrt2;
  if (!(r.p_c < r.p_t))
    throw std::logic_error("mermin_report: p_c must stay below p_t");
  return r;
}

// Depolarizing strength where the maximal CHSH value crosses the local
// bound 2: the n = 2 analogue of the Mermin threshold.
inline double chsh_critical_noise_depolarizing() {
  return 1.0 - std::pow(2.0, -0.25);
}

}  // namespace ghznl
