#include "edgesim/des/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgesim::des {

namespace {

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t global_seed, std::string_view name)
    : name_(name), seed_(global_seed ^ fnv1a64(name)) {
  std::uint64_t sm = seed_;
  for (auto& word : state_) {
    word = splitmix64_next(sm);
  }
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl64(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl64(state_[3], 45);
  return result;
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RandomStream::next_below: bound must be > 0");
  }
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

double RandomStream::normal(double mean, double stddev) {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return mean + stddev * spare_normal_;
  }
  double u1 = next_double();
  double u2 = next_double();
  while (u1 <= 0.0) {  // log(0) guard; next_double can return exactly 0
    u1 = next_double();
  }
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return mean + stddev * radius * std::cos(angle);
}

}  // namespace edgesim::des
