#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "edgesim/des/engine.hpp"
#include "edgesim/des/trace.hpp"
#include "edgesim/net/application.hpp"
#include "edgesim/net/link.hpp"
#include "edgesim/net/node.hpp"
#include "edgesim/net/packet.hpp"

namespace edgesim::net {

struct NetStats {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_no_route = 0;
  std::uint64_t dropped_app_stopped = 0;

  std::uint64_t in_flight() const {
    return sent - delivered - dropped_queue - dropped_no_route -
           dropped_app_stopped;
  }
};

struct SendResult {
  enum class Status { Sent, NoRoute };
  std::uint64_t packet_id = 0;
  Status status = Status::Sent;

  bool routed() const { return status == Status::Sent; }
};

// Network model on top of the event engine: nodes, point-to-point links,
// address assignment, static shortest-path routing, and store-and-forward
// message transport with per-hop queueing and serialization.
class Network {
 public:
  Network(des::Engine& engine, des::Tracer& tracer)
      : engine_(engine), tracer_(tracer) {}

  des::Engine& engine() { return engine_; }
  des::Tracer& tracer() { return tracer_; }

  std::vector<NodeId> create_nodes(std::size_t n);

  LinkId connect_p2p(NodeId a, NodeId b, std::uint64_t rate_bps,
                     std::uint64_t delay_ns, std::size_t queue_capacity);

  // Assigns 10.0.0.k addresses in creation order and computes the global
  // static routing table (shortest hop count, ties to lowest next-hop id).
  std::vector<Address> install_stack(std::span<const NodeId> nodes);
  std::vector<Address> install_stack();  // all nodes

  void install_application(NodeId node, std::shared_ptr<Application> app,
                           des::SimTime start_at, des::SimTime stop_at);

  SendResult send(Application& app, Address dst, PacketKind kind,
                  std::vector<std::uint8_t> payload);

  Node& node(NodeId id);
  const Node& node(NodeId id) const;
  std::size_t node_count() const { return nodes_.size(); }
  Link& link(LinkId id);

  std::optional<NodeId> node_by_address(Address a) const;

  // Next hop from `from` toward `dst`, if a route exists.
  std::optional<NodeId> next_hop(NodeId from, NodeId dst) const;

  const NetStats& stats() const { return stats_; }

  std::uint64_t serialization_ns(const Link& link, std::size_t size_bytes) const;

 private:
  void check_node(NodeId id) const;
  void route_or_drop(NodeId at, Packet packet);
  void enqueue_on_link(Link& link, NodeId from, Packet packet);
  void start_transmission(Link& link, NodeId from, Packet packet);
  void arrive(NodeId at, Packet packet);
  void deliver(Node& node, const Packet& packet);
  void compute_routes();

  std::vector<std::pair<std::string, std::string>> packet_detail(
      const Packet& p) const;

  des::Engine& engine_;
  des::Tracer& tracer_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  bool stack_installed_ = false;
  std::uint64_t next_packet_id_ = 1;
  // next_hop_[src][dst]: next node on the shortest path, or npos.
  std::vector<std::vector<NodeId>> next_hop_;
  NetStats stats_;

  static constexpr NodeId kNoHop = static_cast<NodeId>(-1);
};

}  // namespace edgesim::net
