#pragma once

#include <cstdint>

namespace sweetspot {

// SplitMix64-based stream generator. Streams derived from (seed, stream) are
// reproducible regardless of platform, thread schedule, or interleaving with
// other streams, which is what makes parallel rollouts bitwise repeatable.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_double();    // uniform in [0, 1)
  double next_normal();    // standard normal, Box-Muller
  int next_int(int bound); // uniform in {0, ..., bound - 1}; bound >= 1

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

// Stream id convention: purpose tag in the high bits, index in the low bits.
constexpr std::uint64_t stream_id(std::uint64_t tag, std::uint64_t index) {
  return (tag << 48) ^ index;
}

}  // namespace sweetspot
