#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace edgesim::net {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;

// IPv4-style 32-bit address; 0 means unassigned.
struct Address {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const Address&) const = default;
  constexpr bool assigned() const { return value != 0; }

  std::string to_string() const {
    return std::to_string((value >> 24) & 0xff) + '.' +
           std::to_string((value >> 16) & 0xff) + '.' +
           std::to_string((value >> 8) & 0xff) + '.' +
           std::to_string(value & 0xff);
  }
};

enum class PacketKind : std::uint8_t {
  DataSample,
  DataRequest,
  ModelResult,
  Control,
};

std::string_view to_string(PacketKind kind);

// Fixed per-packet header overhead approximating TCP/IP framing; keeps link
// timing analytic.
inline constexpr std::size_t kPacketHeaderBytes = 40;

struct Packet {
  std::uint64_t id = 0;
  Address src;
  Address dst;
  PacketKind kind = PacketKind::Control;
  std::vector<std::uint8_t> payload;

  std::size_t size_bytes() const { return payload.size() + kPacketHeaderBytes; }
};

}  // namespace edgesim::net
