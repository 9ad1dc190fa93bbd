#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ghznl {

using Complex = std::complex<double>;

struct EigenSystem {
  int dim = 0;
  std::vector<double> values;    // ascending
  std::vector<Complex> vectors;  // column k (vectors[i + dim*k]) pairs with values[k]
};

// Cyclic Jacobi diagonalization for Hermitian matrices up to dimension 256.
// Each pivot (p,q) is reduced to the real-symmetric case by factoring out
// the phase of a_pq, then rotated with the classic smaller-root tangent.
// Row-cyclic pivot order and a fixed off-diagonal threshold keep repeated
// runs bit-identical.
inline EigenSystem hermitian_eigensystem(std::vector<Complex> a, int dim,
                                         bool want_vectors = true) {
  if (dim <= 0 || static_cast<int>(a.size()) != dim * dim)
    throw std::invalid_argument("hermitian_eigensystem: bad dimensions");
  if (dim > 256)
    throw std::length_error("hermitian_eigensystem: dimension above 256");

  auto at = [&](int i, int j) -> Complex& { return a[i * dim + j]; };

  std::vector<Complex> v;
  if (want_vectors) {
    v.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
    for (int i = 0; i < dim; ++i) v[i + static_cast<std::size_t>(dim) * i] = 1.0;
  }

  double fro = 0.0;
  for (const Complex& z : a) fro += std::norm(z);
  fro = std::sqrt(fro);
  const double threshold = 1e-13 * std::max(1.0, fro);

  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) off += std::norm(at(i, j));
    if (std::sqrt(2.0 * off) < threshold) {
      converged = true;
      break;
    }
    for (int p = 0; p < dim - 1; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const Complex apq = at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const Complex phase = apq / r;  // a_pq = r * phase
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary V = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p,q).
        const Complex vs = s * std::conj(phase);
        const Complex vc = c * std::conj(phase);
        for (int i = 0; i < dim; ++i) {  // columns: A <- A V
          const Complex aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - vs * aiq;
          at(i, q) = s * aip + vc * aiq;
        }
        for (int j = 0; j < dim; ++j) {  // rows: A <- V^dagger A
          const Complex apj = at(p, j), aqj = at(q, j);
          at(p, j) = c * apj - std::conj(vs) * aqj;
          at(q, j) = s * apj + std::conj(vc) * aqj;
        }
        at(p, q) = at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
        if (want_vectors) {
          for (int i = 0; i < dim; ++i) {
            const Complex vip = v[i + static_cast<std::size_t>(dim) * p];
            const Complex viq = v[i + static_cast<std::size_t>(dim) * q];
            v[i + static_cast<std::size_t>(dim) * p] = c * vip - vs * viq;
            v[i + static_cast<std::size_t>(dim) * q] = s * vip + vc * viq;
          }
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) off += std::norm(at(i, j));
    if (std::sqrt(2.0 * off) >= threshold)
      throw std::runtime_error("hermitian_eigensystem: no convergence");
  }

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return at(i, i).real() < at(j, j).real(); });

  EigenSystem out;
  out.dim = dim;
  out.values.resize(dim);
  for (int k = 0; k < dim; ++k) out.values[k] = at(order[k], order[k]).real();
  if (want_vectors) {
    out.vectors.resize(static_cast<std::size_t>(dim) * dim);
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i)
        out.vectors[i + static_cast<std::size_t>(dim) * k] =
            v[i + static_cast<std::size_t>(dim) * order[k]];
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(std::vector<Complex> a,
                                                 int dim) {
  return hermitian_eigensystem(std::move(a), dim, false).values;
}

}  // namespace ghznl
