#pragma once

#include <cstdint>
#include <deque>

#include "edgesim/net/packet.hpp"

namespace edgesim::net {

struct LinkConfig {
  std::uint64_t rate_bps = 0;
  std::uint64_t delay_ns = 0;
  std::size_t queue_capacity = 0;  // packets waiting behind the one in service
};

// Point-to-point channel between two distinct nodes. Each direction has an
// independent drop-tail queue and a transmitter that serializes one packet at
// a time; the in-service packet does not occupy a queue slot.
class Link {
 public:
  Link(LinkId id, NodeId a, NodeId b, LinkConfig cfg)
      : id_(id), a_(a), b_(b), cfg_(cfg) {}

  LinkId id() const { return id_; }
  NodeId a() const { return a_; }
  NodeId b() const { return b_; }
  const LinkConfig& config() const { return cfg_; }

  NodeId other_end(NodeId from) const { return from == a_ ? b_ : a_; }

  struct Direction {
    std::deque<Packet> queue;
    bool busy = false;
  };

  Direction& direction_from(NodeId from) { return from == a_ ? forward_ : reverse_; }

 private:
  LinkId id_;
  NodeId a_;
  NodeId b_;
  LinkConfig cfg_;
  Direction forward_;   // a -> b
  Direction reverse_;   // b -> a
};

}  // namespace edgesim::net
