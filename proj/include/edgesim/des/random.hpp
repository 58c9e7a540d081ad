#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgesim::des {

// FNV-1a, 64 bit. Used both for deriving named sub-seeds and for parameter
// digests over serialized model bytes.
constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = kFnvOffsetBasis;
  for (char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = kFnvOffsetBasis;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic, platform-independent random stream.
//
// Generator: xoshiro256** whose 256-bit state is filled by four splitmix64
// draws from the sub-seed `global_seed ^ fnv1a64(name)`. Same (seed, name)
// produces the same sequence on every platform; distinct names produce
// independent streams. Floating-point draws use fixed algorithms (53-bit
// mantissa uniform, Box-Muller normal) rather than std::<distribution>,
// whose output is implementation-defined.
class RandomStream {
 public:
  RandomStream(std::uint64_t global_seed, std::string_view name);

  const std::string& name() const { return name_; }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 significant bits.
  double next_double();

  // Uniform integer in [0, bound). Unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  double normal(double mean = 0.0, double stddev = 1.0);

  // Fisher-Yates, driven by next_below.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::string name_;
  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace edgesim::des
