#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ghznl/bell.hpp"
#include "ghznl/rng.hpp"
#include "ghznl/state.hpp"

namespace ghznl {

// Distributed-computation instance: n users each broadcast one bit to
// jointly evaluate f = y_1 ... y_n sign(g(x)), with settings drawn from
// Q(x) = |g(x)| / sum|g|.
struct CcpInstance {
  int n = 0;
  BellFunctional functional;
  std::vector<double> q;      // Q over the 2^n setting strings
  std::vector<double> q_cdf;  // running sums for sampling
  std::vector<SettingPair> settings;
};

inline CcpInstance make_ccp_instance(const BellFunctional& f,
                                     std::vector<SettingPair> settings) {
  if (f.n < 2 || f.n > 20)
    throw std::length_error("make_ccp_instance: setting table capped at n = 20");
  if (static_cast<int>(settings.size()) != f.n)
    throw std::invalid_argument("make_ccp_instance: one setting pair per party");
  CcpInstance inst;
  inst.n = f.n;
  inst.functional = f;
  inst.settings = std::move(settings);
  const std::size_t dim = std::size_t{1} << f.n;
  inst.q.resize(dim);
  inst.q_cdf.resize(dim);
  double total = 0.0;
  for (std::size_t x = 0; x < dim; ++x)
    total += std::abs(f.g(static_cast<std::uint32_t>(x)));
  if (total <= 0.0)
    throw std::invalid_argument("make_ccp_instance: functional is identically 0");
  double running = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    inst.q[x] = std::abs(f.g(static_cast<std::uint32_t>(x))) / total;
    running += inst.q[x];
    inst.q_cdf[x] = running;
  }
  inst.q_cdf.back() = 1.0;
  return inst;
}

inline CcpInstance make_mermin_ccp(int n) {
  return make_ccp_instance(mermin_functional(n), xy_settings(n));
}

// p^s = (1 + value/sum|g|) / 2: the tight link between the Bell value of
// the assisting correlations and the success probability.
inline double success_probability(double value, double abs_sum) {
  if (!(abs_sum > 0.0))
    throw std::invalid_argument("success_probability: need sum|g| > 0");
  if (std::abs(value) > abs_sum * (1.0 + 1e-12))
    throw std::invalid_argument(
        "success_probability: |value| above the algebraic maximum");
  return 0.5 * (1.0 + value / abs_sum);
}

struct CcpOutcome {
  int n = 0;
  double p = 0.0;
  double p_s_quantum = 0.0;
  double p_s_local = 0.0;
  double gain = 0.0;  // p_s_quantum - p_s_local, may be negative
  bool even_variant = false;
};

// Closed-form success probabilities for the Mermin game with a decohered
// GHZ resource versus the best classical-correlation protocol.
inline CcpOutcome quantum_gain(int n, double p) {
  if (n < 3) throw std::invalid_argument("quantum_gain: needs n >= 3");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("quantum_gain: noise strength outside [0,1]");
  CcpOutcome out;
  out.n = n;
  out.p = p;
  out.even_variant = (n % 2 == 0);
  out.p_s_quantum = 0.5 * (1.0 + std::pow(1.0 - p, n));
  const double classical_exp = out.even_variant ? 0.5 * (n - 2) : 0.5 * (n - 1);
  out.p_s_local = 0.5 * (1.0 + std::exp2(-classical_exp));
  out.gain = out.p_s_quantum - out.p_s_local;
  return out;
}

// Party count where the gain turns from growing to decaying with n:
//   N* = log(sqrt2 ln(1/sqrt2)/ln(1-p)) / log(sqrt2 (1-p)),
// defined for 0 < p < 1 - 1/sqrt2; outside that range the gain has no
// growth-to-decay transition and nullopt is returned.
inline std::optional<double> transition_n(double p) {
  const double p_t = 1.0 - 1.0 / std::numbers::sqrt2;
  if (!(p > 0.0 && p < p_t)) return std::nullopt;
  const double num =
      std::log(std::numbers::sqrt2 * std::log(1.0 / std::numbers::sqrt2) /
               std::log(1.0 - p));
  const double den = std::log(std::numbers::sqrt2 * (1.0 - p));
  return num / den;
}

// P(a|x) = 2^{-n} (1 + C(x) prod_i a_i): with equatorial settings every
// proper-subset correlation of this state family vanishes, so the outcome
// string is uniform up to a full-parity bias.
inline double conditional_outcome_probability(const GhzDiagonalState& s,
                                              std::span<const Observable> obs,
                                              std::span<const int> outcomes) {
  if (static_cast<int>(outcomes.size()) != s.n)
    throw std::invalid_argument(
        "conditional_outcome_probability: one outcome per party");
  int parity = 1;
  for (int a : outcomes) {
    if (a != 1 && a != -1)
      throw std::invalid_argument(
          "conditional_outcome_probability: outcomes are +-1");
    parity *= a;
  }
  const double c = correlation(s, obs);
  return std::exp2(-s.n) * (1.0 + c * parity);
}

// Oracle route: Tr[rho prod_i (I + a_i O_i)/2].
inline double conditional_outcome_probability_dense(
    const DenseState& s, std::span<const Observable> obs,
    std::span<const int> outcomes) {
  if (static_cast<int>(obs.size()) != s.n ||
      static_cast<int>(outcomes.size()) != s.n)
    throw std::invalid_argument(
        "conditional_outcome_probability_dense: size mismatch");
  const std::size_t dim = s.dim();
  std::vector<Mat2> proj(s.n);
  for (int q = 0; q < s.n; ++q) {
    const Observable& o = obs[q];
    check_unit(o);
    const double a = static_cast<double>(outcomes[q]);
    proj[q] = Mat2{Complex{0.5 * (1.0 + a * o.z), 0.0},
                   Complex{0.5 * a * o.x, -0.5 * a * o.y},
                   Complex{0.5 * a * o.x, 0.5 * a * o.y},
                   Complex{0.5 * (1.0 - a * o.z), 0.0}};
  }
  Complex tr = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Complex m{1.0, 0.0};
      for (int q = 0; q < s.n; ++q)
        m *= proj[q][((c >> q) & 1) * 2 + ((r >> q) & 1)];
      tr += s.at(r, c) * m;
    }
  return tr.real();
}

// Monte-Carlo run of the single-broadcast parity protocol: draw x ~ Q and
// uniform y_i, sample the outcome string from the parity-biased form above,
// broadcast m_i = a_i y_i, guess prod_j m_j. The expected success rate is
// exactly (1 + I/sum|g|)/2. Each trial owns one RNG stream, so the rate is
// reproducible for a fixed seed under any sharding.
inline double simulate_game(const CcpInstance& inst,
                            const GhzDiagonalState& state,
                            std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("simulate_game: trials >= 1");
  if (inst.n != state.n)
    throw std::invalid_argument("simulate_game: party count mismatch");
  for (const SettingPair& pair : inst.settings)
    for (const Observable& o : pair) {
      check_unit(o);
      if (std::abs(o.z) > 1e-12)
        throw std::invalid_argument(
            "simulate_game: unsupported protocol, settings must be equatorial");
    }

  // correlations per setting string (equatorial: only the coherence acts)
  const std::size_t dim = std::size_t{1} << inst.n;
  std::vector<double> corr(dim);
  std::vector<Observable> obs(inst.n);
  for (std::size_t x = 0; x < dim; ++x) {
    if (inst.q[x] == 0.0) continue;
    for (int i = 0; i < inst.n; ++i) obs[i] = inst.settings[i][(x >> i) & 1];
    corr[x] = correlation(state, obs);
  }

  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    const double u = rng.next_unit();
    const std::size_t x =
        std::upper_bound(inst.q_cdf.begin(), inst.q_cdf.end(), u) -
        inst.q_cdf.begin();
    int y_parity = 1;
    std::vector<int> y(inst.n);
    for (int i = 0; i < inst.n; ++i) {
      y[i] = rng.next_sign();
      y_parity *= y[i];
    }
    // outcome string: uniform conditioned on the sampled full parity
    const int parity =
        rng.next_unit() < 0.5 * (1.0 + corr[x]) ? 1 : -1;
    std::vector<int> a(inst.n);
    int partial = 1;
    for (int i = 0; i + 1 < inst.n; ++i) {
      a[i] = rng.next_sign();
      partial *= a[i];
    }
    a[inst.n - 1] = parity * partial;

    int guess = 1;
    for (int i = 0; i < inst.n; ++i) guess *= a[i] * y[i];  // broadcast bits
    const double gx = inst.functional.g(static_cast<std::uint32_t>(x));
    const int f = y_parity * (gx >= 0.0 ? 1 : -1);
    if (guess == f) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

// Closed-form success rate the simulation converges to.
inline double closed_form_success(const CcpInstance& inst,
                                  const GhzDiagonalState& state) {
  return success_probability(bell_value(inst.functional, state, inst.settings),
                             inst.functional.abs_sum);
}

}  // namespace ghznl
