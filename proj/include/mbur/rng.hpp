#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace mbur {

/// Uniform generator producing doubles strictly inside (0,1). Thin wrapper so
/// that stream contents do not depend on the standard library's
/// uniform_real_distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53 significant bits, offset by half an ulp so 0 and 1 are unreachable.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Deterministic substream derivation: splitmix64 finalizer chained over the
/// master seed and each label. Stable across releases; a change in any single
/// label scrambles roughly half of the output bits.
std::uint64_t derive_substream_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> labels);
std::uint64_t derive_substream_seed(std::uint64_t master,
                                    const std::vector<std::uint64_t>& labels);

}  // namespace mbur
