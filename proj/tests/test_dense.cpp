#include <catch2/catch_amalgamated.hpp>

#include "ghznl/dense.hpp"
#include "ghznl/jacobi.hpp"
#include "ghznl/rng.hpp"

using namespace ghznl;
using Catch::Approx;

namespace {

DenseState random_density_matrix(int n, std::uint64_t seed) {
  // mixture of a few random rank-1 projectors
  CounterRng rng(seed);
  DenseState s = zero_dense(n);
  const std::size_t dim = s.dim();
  for (int r = 0; r < 3; ++r) {
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (auto& z : v) {
      z = Complex{rng.next_unit() - 0.5, rng.next_unit() - 0.5};
      norm += std::norm(z);
    }
    const double w = (r == 2) ? 0.4 : 0.3;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        s.at(i, j) += w * v[i] * std::conj(v[j]) / norm;
  }
  return s;
}

}  // namespace

TEST_CASE("jacobi reproduces known spectra", "[dense]") {
  SECTION("2x2 complex Hermitian") {
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3
    std::vector<Complex> a{Complex{2, 0}, Complex{0, 1}, Complex{0, -1},
                           Complex{2, 0}};
    const auto ev = hermitian_eigenvalues(a, 2);
    CHECK(ev[0] == Approx(1.0).margin(1e-13));
    CHECK(ev[1] == Approx(3.0).margin(1e-13));
  }
  SECTION("diagonal matrix is a fixed point") {
    std::vector<Complex> a{Complex{-1, 0}, {}, {}, {},
                           {}, Complex{4, 0}, {}, {},
                           {}, {}, Complex{0.5, 0}, {},
                           {}, {}, {}, Complex{2, 0}};
    const auto ev = hermitian_eigenvalues(a, 4);
    CHECK(ev == std::vector<double>{-1.0, 0.5, 2.0, 4.0});
  }
  SECTION("eigenpairs of a random Hermitian matrix") {
    const DenseState s = random_density_matrix(4, 77);
    const int dim = 16;
    const EigenSystem es = hermitian_eigensystem(s.rho, dim);
    double tr = 0.0;
    for (int k = 0; k < dim; ++k) {
      tr += es.values[k];
      for (int i = 0; i < dim; ++i) {
        Complex av{};
        for (int j = 0; j < dim; ++j)
          av += s.rho[i * dim + j] * es.vectors[j + dim * k];
        CHECK(std::abs(av - es.values[k] * es.vectors[i + dim * k]) < 1e-10);
      }
    }
    CHECK(tr == Approx(trace_real(s)).margin(1e-10));
  }
}

TEST_CASE("kraus sets are trace preserving", "[dense]") {
  const auto kind = GENERATE(NoiseKind::Depolarizing, NoiseKind::PhaseDamping);
  for (int i = 0; i <= 20; ++i)
    CHECK(kraus_completeness_defect(kraus_for(kind, i / 20.0)) < 1e-12);
  CHECK_THROWS_AS(kraus_for(NoiseKind::Depolarizing, 1.5),
                  std::invalid_argument);
}

TEST_CASE("kraus limits match the channel definitions", "[dense]") {
  SECTION("no noise is the identity channel") {
    CHECK(kraus_for(NoiseKind::Depolarizing, 0.0).ops.size() == 1);
    const DenseState s = random_density_matrix(2, 3);
    const DenseState out = apply_channel_dense(s, NoiseKind::Depolarizing, 0.0);
    for (std::size_t i = 0; i < s.rho.size(); ++i)
      CHECK(std::abs(out.rho[i] - s.rho[i]) < 1e-14);
  }
  SECTION("full dephasing removes single-qubit off-diagonals") {
    DenseState s = zero_dense(1);
    s.at(0, 0) = 0.6;
    s.at(1, 1) = 0.4;
    s.at(0, 1) = Complex{0.3, 0.1};
    s.at(1, 0) = Complex{0.3, -0.1};
    const DenseState out = apply_channel_dense(s, NoiseKind::PhaseDamping, 1.0);
    CHECK(std::abs(out.at(0, 1)) < 1e-14);
    CHECK(out.at(0, 0).real() == Approx(0.6));
    CHECK(out.at(1, 1).real() == Approx(0.4));
  }
  SECTION("full depolarization maps everything to I/2 per qubit") {
    const DenseState s = random_density_matrix(2, 11);
    const DenseState out = apply_channel_dense(s, NoiseKind::Depolarizing, 1.0);
    const DenseState mixed = maximally_mixed_dense(2);
    for (std::size_t i = 0; i < out.rho.size(); ++i)
      CHECK(std::abs(out.rho[i] - mixed.rho[i]) < 1e-12);
  }
}

TEST_CASE("dense channel output matches the hand-computed Bell case", "[dense]") {
  const DenseState out =
      apply_channel_dense(make_ghz_dense(2), NoiseKind::Depolarizing, 0.2);
  CHECK(out.at(0, 0).real() == Approx(0.41).margin(1e-14));
  CHECK(out.at(1, 1).real() == Approx(0.09).margin(1e-14));
  CHECK(out.at(2, 2).real() == Approx(0.09).margin(1e-14));
  CHECK(out.at(3, 3).real() == Approx(0.41).margin(1e-14));
  CHECK(out.at(0, 3).real() == Approx(0.32).margin(1e-14));
  CHECK(std::abs(out.at(0, 1)) < 1e-14);
}

TEST_CASE("dephased GHZ(3) corner element decays as 0.5 (1-p)^3", "[dense]") {
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const DenseState out =
        apply_channel_dense(make_ghz_dense(3), NoiseKind::PhaseDamping, p);
    CHECK(out.at(0, 7).real() == Approx(0.5 * std::pow(1.0 - p, 3)).margin(1e-13));
    CHECK(std::abs(out.at(0, 7).imag()) < 1e-14);
  }
}

TEST_CASE("channels preserve hermiticity, trace and positivity", "[dense]") {
  const int n = GENERATE(2, 3, 4);
  const auto kind = GENERATE(NoiseKind::Depolarizing, NoiseKind::PhaseDamping);
  const double p = GENERATE(0.0, 0.15, 0.5, 0.85, 1.0);
  const DenseState out = apply_channel_dense(make_ghz_dense(n), kind, p);
  CHECK(hermiticity_defect(out) < 1e-12);
  CHECK(trace_real(out) == Approx(1.0).margin(1e-12));
  CHECK(min_eigenvalue(out) > -1e-10);
}

TEST_CASE("dense cap rejects large systems", "[dense]") {
  CHECK_THROWS_AS(zero_dense(9), std::length_error);
  const DenseState s = make_ghz_dense(4);
  CHECK_THROWS_AS(apply_channel_dense(s, NoiseKind::Depolarizing, 0.1, 3),
                  std::length_error);
}

TEST_CASE("partial transpose spectra", "[dense]") {
  SECTION("Bell state has the textbook spectrum") {
    const auto ev = pt_spectrum(make_ghz_dense(2), 0b01);
    REQUIRE(ev.size() == 4);
    CHECK(ev[0] == Approx(-0.5).margin(1e-13));
    CHECK(ev[1] == Approx(0.5).margin(1e-13));
    CHECK(ev[2] == Approx(0.5).margin(1e-13));
    CHECK(ev[3] == Approx(0.5).margin(1e-13));
  }
  SECTION("product state stays positive") {
    DenseState s = zero_dense(2);
    s.at(0, 0) = 1.0;  // |00><00|
    for (double ev : pt_spectrum(s, 0b10)) CHECK(ev >= -1e-13);
  }
  SECTION("spectrum sums to the trace") {
    const DenseState s = random_density_matrix(3, 5);
    for (std::uint32_t mask : {1u, 3u, 5u}) {
      double sum = 0.0;
      for (double ev : pt_spectrum(s, mask)) sum += ev;
      CHECK(sum == Approx(trace_real(s)).margin(1e-10));
    }
  }
  SECTION("any same-size cut of a symmetric state gives the same spectrum") {
    const DenseState s =
        apply_channel_dense(make_ghz_dense(4), NoiseKind::Depolarizing, 0.3);
    const auto ref = pt_spectrum(s, 0b0011);
    for (std::uint32_t mask : {0b0101u, 0b1010u, 0b1001u, 0b0110u}) {
      const auto ev = pt_spectrum(s, mask);
      for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(ev[i] == Approx(ref[i]).margin(1e-11));
    }
  }
  SECTION("empty and full cuts are rejected") {
    const DenseState s = make_ghz_dense(2);
    CHECK_THROWS_AS(pt_spectrum(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(pt_spectrum(s, 0b11), std::invalid_argument);
  }
}

TEST_CASE("half-half PT minimum matches the corner-block prediction", "[dense]") {
  const GhzDiagonalState s =
      apply_channel(make_ghz(4), NoiseKind::Depolarizing, 0.2);
  const auto ev = pt_spectrum(make_dense(s), 0b0011);
  // the only negative direction is the transposed corner block: d_2 - c
  CHECK(ev.front() == Approx(s.diag_profile[2] - s.coherence).margin(1e-12));
}

TEST_CASE("wootters concurrence on reference states", "[dense]") {
  CHECK(wootters_concurrence(make_ghz_dense(2)) == Approx(1.0).margin(1e-10));
  CHECK(wootters_concurrence(maximally_mixed_dense(2)) ==
        Approx(0.0).margin(1e-10));
  const DenseState dephased =
      apply_channel_dense(make_ghz_dense(2), NoiseKind::PhaseDamping, 0.3);
  CHECK(wootters_concurrence(dephased) == Approx(0.49).margin(1e-10));
  CHECK_THROWS_AS(wootters_concurrence(make_ghz_dense(3)),
                  std::invalid_argument);
}

TEST_CASE("pauli correlation matrix of two-qubit states", "[dense]") {
  SECTION("Bell state gives diag(1, -1, 1)") {
    const auto t = horodecki_tmatrix(make_ghz_dense(2));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double expected = (i != j) ? 0.0 : (i == 1 ? -1.0 : 1.0);
        CHECK(t[i][j] == Approx(expected).margin(1e-13));
      }
  }
  SECTION("maximally mixed gives zero") {
    const auto t = horodecki_tmatrix(maximally_mixed_dense(2));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(t[i][j] == Approx(0.0).margin(1e-13));
  }
  SECTION("dephased Bell gives diag((1-p)^2, -(1-p)^2, 1)") {
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const auto t = horodecki_tmatrix(
          apply_channel_dense(make_ghz_dense(2), NoiseKind::PhaseDamping, p));
      const double f = (1.0 - p) * (1.0 - p);
      CHECK(t[0][0] == Approx(f).margin(1e-12));
      CHECK(t[1][1] == Approx(-f).margin(1e-12));
      CHECK(t[2][2] == Approx(1.0).margin(1e-12));
      CHECK(t[0][1] == Approx(0.0).margin(1e-13));
    }
  }
  CHECK_THROWS_AS(horodecki_tmatrix(make_ghz_dense(3)), std::invalid_argument);
}
