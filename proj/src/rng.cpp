#include "sweetspot/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sweetspot {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(mix(seed + kGamma) ^ mix(stream + 0x8000000000000001ull))) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1 = 0.0;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(theta);
  has_cached_ = true;
  return radius * std::cos(theta);
}

int RngStream::next_int(int bound) {
  if (bound < 1) {
    throw std::invalid_argument("RngStream::next_int: bound must be >= 1");
  }
  return static_cast<int>(
      (static_cast<unsigned __int128>(next_u64()) *
       static_cast<unsigned __int128>(bound)) >> 64);
}

}  // namespace sweetspot
