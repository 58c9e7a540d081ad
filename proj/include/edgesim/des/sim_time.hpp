#pragma once

#include <compare>
#include <cstdint>

namespace edgesim::des {

// Simulated timestamps are integer nanoseconds. Derived durations (serialization,
// compute cost) are rounded to whole nanoseconds, half up, so traces are identical
// across platforms.
struct SimTime {
  std::uint64_t ns = 0;

  constexpr auto operator<=>(const SimTime&) const = default;
};

constexpr SimTime operator+(SimTime t, std::uint64_t delta_ns) {
  return SimTime{t.ns + delta_ns};
}

inline constexpr std::uint64_t kNsPerSecond = 1'000'000'000;

constexpr std::uint64_t milliseconds(std::uint64_t ms) { return ms * 1'000'000; }
constexpr std::uint64_t seconds(std::uint64_t s) { return s * kNsPerSecond; }

// (a * b) / d with round-half-up, widened so packet-size * 1e9 cannot overflow.
constexpr std::uint64_t mul_div_round_half_up(std::uint64_t a, std::uint64_t b,
                                              std::uint64_t d) {
  using u128 = unsigned __int128;
  u128 num = static_cast<u128>(a) * b + d / 2;
  return static_cast<std::uint64_t>(num / d);
}

}  // namespace edgesim::des
