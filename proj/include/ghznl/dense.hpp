#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ghznl/jacobi.hpp"
#include "ghznl/state.hpp"

namespace ghznl {

// Brute-force verification backend: full 2^n x 2^n density matrices with
// per-qubit operator-sum channel action. Everything here is meant for
// cross-checking the closed forms at small n, not for scalable simulation.
inline constexpr int kDenseQubitCap = 8;

// Qubit q <-> bit q of the basis index (qubit 0 is the least significant).
struct DenseState {
  int n = 0;
  std::vector<Complex> rho;  // row-major, 2^n x 2^n

  std::size_t dim() const { return std::size_t{1} << n; }
  Complex& at(std::size_t i, std::size_t j) { return rho[i * dim() + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return rho[i * dim() + j];
  }
};

inline DenseState zero_dense(int n) {
  if (n < 1) throw std::invalid_argument("zero_dense: need at least 1 qubit");
  if (n > kDenseQubitCap)
    throw std::length_error("zero_dense: dense qubit cap exceeded");
  DenseState s;
  s.n = n;
  s.rho.assign((std::size_t{1} << n) * (std::size_t{1} << n), Complex{});
  return s;
}

inline DenseState make_ghz_dense(int n) {
  DenseState s = zero_dense(n);
  const std::size_t last = s.dim() - 1;
  s.at(0, 0) = s.at(last, last) = 0.5;
  s.at(0, last) = s.at(last, 0) = 0.5;
  return s;
}

inline DenseState maximally_mixed_dense(int n) {
  DenseState s = zero_dense(n);
  const double w = 1.0 / static_cast<double>(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) s.at(i, i) = w;
  return s;
}

inline DenseState make_dense(const GhzDiagonalState& g) {
  DenseState s = zero_dense(g.n);
  for (std::size_t i = 0; i < s.dim(); ++i)
    s.at(i, i) = g.diag_profile[std::popcount(i)];
  const std::size_t last = s.dim() - 1;
  s.at(0, last) += g.coherence;
  s.at(last, 0) += g.coherence;
  return s;
}

// ---------------------------------------------------------------------------
// Kraus channels
// ---------------------------------------------------------------------------

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

inline constexpr Mat2 kPauliI{Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
                              Complex{1, 0}};
inline constexpr Mat2 kPauliX{Complex{0, 0}, Complex{1, 0}, Complex{1, 0},
                              Complex{0, 0}};
inline constexpr Mat2 kPauliY{Complex{0, 0}, Complex{0, -1}, Complex{0, 1},
                              Complex{0, 0}};
inline constexpr Mat2 kPauliZ{Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
                              Complex{-1, 0}};

struct KrausSet {
  std::vector<Mat2> ops;
};

inline Mat2 scaled(const Mat2& m, double f) {
  return {f * m[0], f * m[1], f * m[2], f * m[3]};
}

// Depolarizing as the Pauli channel with weights (1-3p/4, p/4, p/4, p/4);
// phase damping as {sqrt(1-p) I, sqrt(p)|0><0|, sqrt(p)|1><1|}.
inline KrausSet kraus_for(NoiseKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("kraus_for: noise strength outside [0,1]");
  KrausSet set;
  if (kind == NoiseKind::Depolarizing) {
    set.ops.push_back(scaled(kPauliI, std::sqrt(1.0 - 0.75 * p)));
    if (p > 0.0) {
      const double w = std::sqrt(0.25 * p);
      set.ops.push_back(scaled(kPauliX, w));
      set.ops.push_back(scaled(kPauliY, w));
      set.ops.push_back(scaled(kPauliZ, w));
    }
  } else {
    set.ops.push_back(scaled(kPauliI, std::sqrt(1.0 - p)));
    if (p > 0.0) {
      const double w = std::sqrt(p);
      set.ops.push_back(Mat2{Complex{w, 0}, Complex{}, Complex{}, Complex{}});
      set.ops.push_back(Mat2{Complex{}, Complex{}, Complex{}, Complex{w, 0}});
    }
  }
  return set;
}

// max-norm of (sum_j K_j^dagger K_j - I); 0 for a trace-preserving set
inline double kraus_completeness_defect(const KrausSet& set) {
  Mat2 acc{};
  for (const Mat2& k : set.ops) {
    acc[0] += std::conj(k[0]) * k[0] + std::conj(k[2]) * k[2];
    acc[1] += std::conj(k[0]) * k[1] + std::conj(k[2]) * k[3];
    acc[2] += std::conj(k[1]) * k[0] + std::conj(k[3]) * k[2];
    acc[3] += std::conj(k[1]) * k[1] + std::conj(k[3]) * k[3];
  }
  acc[0] -= 1.0;
  acc[3] -= 1.0;
  double defect = 0.0;
  for (const Complex& z : acc) defect = std::max(defect, std::abs(z));
  return defect;
}

inline DenseState apply_single_qubit_kraus(const DenseState& in,
                                           const KrausSet& set, int qubit) {
  if (qubit < 0 || qubit >= in.n)
    throw std::invalid_argument("apply_single_qubit_kraus: bad qubit index");
  const std::size_t dim = in.dim();
  const std::size_t bit = std::size_t{1} << qubit;
  DenseState out = in;
  for (Complex& z : out.rho) z = 0.0;
  for (const Mat2& k : set.ops) {
    const Mat2 kc{std::conj(k[0]), std::conj(k[1]), std::conj(k[2]),
                  std::conj(k[3])};
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (j & bit) continue;
        const Complex m00 = in.at(i, j);
        const Complex m01 = in.at(i, j | bit);
        const Complex m10 = in.at(i | bit, j);
        const Complex m11 = in.at(i | bit, j | bit);
        // t = K * M, then M' = t * K^dagger
        const Complex t00 = k[0] * m00 + k[1] * m10;
        const Complex t01 = k[0] * m01 + k[1] * m11;
        const Complex t10 = k[2] * m00 + k[3] * m10;
        const Complex t11 = k[2] * m01 + k[3] * m11;
        out.at(i, j) += t00 * kc[0] + t01 * kc[1];
        out.at(i, j | bit) += t00 * kc[2] + t01 * kc[3];
        out.at(i | bit, j) += t10 * kc[0] + t11 * kc[1];
        out.at(i | bit, j | bit) += t10 * kc[2] + t11 * kc[3];
      }
    }
  }
  return out;
}

inline DenseState apply_channel_dense(const DenseState& in, NoiseKind kind,
                                      double p, int qubit_cap = kDenseQubitCap) {
  if (in.n > qubit_cap)
    throw std::length_error("apply_channel_dense: dense qubit cap exceeded");
  const KrausSet set = kraus_for(kind, p);
  DenseState out = in;
  for (int q = 0; q < in.n; ++q) out = apply_single_qubit_kraus(out, set, q);
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics and entanglement primitives
// ---------------------------------------------------------------------------

inline double trace_real(const DenseState& s) {
  double tr = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) tr += s.at(i, i).real();
  return tr;
}

inline double hermiticity_defect(const DenseState& s) {
  double defect = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i; j < s.dim(); ++j)
      defect = std::max(defect, std::abs(s.at(i, j) - std::conj(s.at(j, i))));
  return defect;
}

inline double min_eigenvalue(const DenseState& s) {
  return hermitian_eigensystem(s.rho, static_cast<int>(s.dim()), false)
      .values.front();
}

// Spectrum of the partial transpose over the qubits selected by cut_mask,
// ascending. The mask must be a nonempty proper subset.
inline std::vector<double> pt_spectrum(const DenseState& s,
                                       std::uint32_t cut_mask) {
  const std::size_t dim = s.dim();
  const std::uint32_t full = static_cast<std::uint32_t>(dim - 1);
  if (cut_mask == 0 || (cut_mask & ~full) != 0 || cut_mask == full)
    throw std::invalid_argument("pt_spectrum: cut must be a nonempty proper subset");
  std::vector<Complex> b(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t ii = (i & ~static_cast<std::size_t>(cut_mask)) |
                             (j & cut_mask);
      const std::size_t jj = (j & ~static_cast<std::size_t>(cut_mask)) |
                             (i & cut_mask);
      b[ii * dim + jj] = s.at(i, j);
    }
  return hermitian_eigenvalues(std::move(b), static_cast<int>(dim));
}

inline double negativity_dense(const DenseState& s, std::uint32_t cut_mask) {
  double neg = 0.0;
  for (double ev : pt_spectrum(s, cut_mask))
    if (ev < 0.0) neg -= ev;
  return neg;
}

// Pauli correlation matrix T_ij = Tr[rho sigma_i x sigma_j] of a two-qubit
// state; party 1 is qubit 0.
inline std::array<std::array<double, 3>, 3> horodecki_tmatrix(
    const DenseState& s) {
  if (s.n != 2)
    throw std::invalid_argument("horodecki_tmatrix: two-qubit states only");
  const std::array<const Mat2*, 3> paulis{&kPauliX, &kPauliY, &kPauliZ};
  std::array<std::array<double, 3>, 3> t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex tr = 0.0;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
          const Complex m = (*paulis[i])[(c & 1) * 2 + (r & 1)] *
                            (*paulis[j])[(c >> 1) * 2 + (r >> 1)];
          tr += s.at(r, c) * m;
        }
      t[i][j] = tr.real();
    }
  return t;
}

// Wootters concurrence of a two-qubit density matrix via the spin-flip
// construction: lambda_i are the square roots of the eigenvalues of
// rho * (Y x Y) rho^* (Y x Y), computed through the Hermitian similarity
// sqrt(rho) * rho_tilde * sqrt(rho).
inline double wootters_concurrence(const DenseState& s) {
  if (s.n != 2)
    throw std::invalid_argument("wootters_concurrence: two-qubit states only");
  const int dim = 4;

  std::vector<Complex> flip(dim * dim);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex yy = kPauliY[(i & 1) * 2 + (j & 1)] *
                         kPauliY[(i >> 1) * 2 + (j >> 1)];
      flip[i * dim + j] = yy;
    }

  // rho_tilde = (YxY) conj(rho) (YxY)
  std::vector<Complex> tilde(dim * dim, Complex{});
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          acc += flip[i * dim + a] * std::conj(s.rho[a * dim + b]) *
                 flip[b * dim + j];
      tilde[i * dim + j] = acc;
    }

  const EigenSystem es = hermitian_eigensystem(s.rho, dim, true);
  std::vector<Complex> sqrt_rho(dim * dim, Complex{});
  for (int k = 0; k < dim; ++k) {
    const double lam = std::sqrt(std::max(0.0, es.values[k]));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        sqrt_rho[i * dim + j] += lam * es.vectors[i + dim * k] *
                                 std::conj(es.vectors[j + dim * k]);
  }

  auto matmul = [dim](const std::vector<Complex>& a,
                      const std::vector<Complex>& b) {
    std::vector<Complex> c(dim * dim, Complex{});
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        const Complex aik = a[i * dim + k];
        for (int j = 0; j < dim; ++j) c[i * dim + j] += aik * b[k * dim + j];
      }
    return c;
  };
  std::vector<Complex> h = matmul(matmul(sqrt_rho, tilde), sqrt_rho);
  // symmetrize away roundoff before diagonalizing
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const Complex avg = 0.5 * (h[i * dim + j] + std::conj(h[j * dim + i]));
      h[i * dim + j] = avg;
      h[j * dim + i] = std::conj(avg);
    }

  std::vector<double> lam = hermitian_eigenvalues(std::move(h), dim);
  for (double& x : lam) x = std::sqrt(std::max(0.0, x));
  // lam ascending: concurrence = lam3 - lam2 - lam1 - lam0
  return std::max(0.0, lam[3] - lam[2] - lam[1] - lam[0]);
}

}  // namespace ghznl
