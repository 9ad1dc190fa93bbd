#pragma once

#include <cmath>
#include <cstdint>

namespace ghznl {

// Binomial coefficient as a double. Exact 64-bit integer arithmetic up to
// n = 60 (C(60,30)*60 still fits), log-gamma beyond that so party-count
// sweeps can run into the hundreds without overflow.
inline double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 60) {
    std::uint64_t acc = 1;
    for (int j = 1; j <= k; ++j)
      acc = acc * static_cast<std::uint64_t>(n - k + j) /
            static_cast<std::uint64_t>(j);
    return static_cast<double>(acc);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

}  // namespace ghznl
