#pragma once

#include <cstdint>

namespace ghznl {

// Counter-based uniform generator: a SplitMix64 finalizer applied to an
// incrementing counter. A (seed, stream) pair fixes the whole sequence,
// so Monte-Carlo trials can be sharded across workers by stream and still
// reproduce bit-identical results in any execution order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + kGamma) + stream)) {}

  std::uint64_t next_u64() { return mix(key_ + ++counter_ * kGamma); }

  // uniform in [0, 1)
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  int next_sign() { return (next_u64() >> 63) ? -1 : +1; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ghznl
