#include "edgesim/net/network.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace edgesim::net {

std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::DataSample: return "DATA_SAMPLE";
    case PacketKind::DataRequest: return "DATA_REQUEST";
    case PacketKind::ModelResult: return "MODEL_RESULT";
    case PacketKind::Control: return "CONTROL";
  }
  return "UNKNOWN";
}

des::Engine& Application::engine() { return net_->engine(); }
des::Tracer& Application::tracer() { return net_->tracer(); }
Node& Application::node() { return net_->node(node_); }

std::vector<NodeId> Network::create_nodes(std::size_t n) {
  if (n < 1) {
    throw std::invalid_argument("create_nodes: n must be >= 1");
  }
  std::vector<NodeId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back(id);
    ids.push_back(id);
  }
  return ids;
}

void Network::check_node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw std::out_of_range("unknown node id " + std::to_string(id));
  }
}

LinkId Network::connect_p2p(NodeId a, NodeId b, std::uint64_t rate_bps,
                            std::uint64_t delay_ns, std::size_t queue_capacity) {
  check_node(a);
  check_node(b);
  if (a == b) {
    throw std::invalid_argument("connect_p2p: endpoints must be distinct");
  }
  if (rate_bps == 0) {
    throw std::invalid_argument("connect_p2p: rate_bps must be > 0");
  }
  LinkId id = static_cast<LinkId>(links_.size());
  links_.emplace_back(id, a, b, LinkConfig{rate_bps, delay_ns, queue_capacity});
  nodes_[a].add_device(id);
  nodes_[b].add_device(id);
  return id;
}

std::vector<Address> Network::install_stack(std::span<const NodeId> ids) {
  std::vector<Address> assigned;
  assigned.reserve(ids.size());
  for (NodeId id : ids) {
    check_node(id);
    if (nodes_[id].address().assigned()) {
      throw std::invalid_argument("install_stack: node " + std::to_string(id) +
                                  " already has an address");
    }
    // 10.0.0.k by creation order.
    Address addr{(10u << 24) + id + 1};
    nodes_[id].set_address(addr);
    assigned.push_back(addr);
  }
  compute_routes();
  stack_installed_ = true;
  return assigned;
}

std::vector<Address> Network::install_stack() {
  std::vector<NodeId> all(nodes_.size());
  std::iota(all.begin(), all.end(), 0);
  return install_stack(all);
}

void Network::compute_routes() {
  const std::size_t n = nodes_.size();
  // Adjacency sorted by neighbor id so the lowest-id next hop wins ties.
  std::vector<std::vector<NodeId>> adj(n);
  for (const Link& link : links_) {
    adj[link.a()].push_back(link.b());
    adj[link.b()].push_back(link.a());
  }
  for (auto& neighbors : adj) {
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()),
                    neighbors.end());
  }

  next_hop_.assign(n, std::vector<NodeId>(n, kNoHop));
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> frontier;
  for (NodeId dst = 0; dst < n; ++dst) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[dst] = 0;
    frontier.assign(1, dst);
    while (!frontier.empty()) {
      std::vector<NodeId> next;
      for (NodeId u : frontier) {
        for (NodeId v : adj[u]) {
          if (dist[v] == kInf) {
            dist[v] = dist[u] + 1;
            next.push_back(v);
          }
        }
      }
      frontier = std::move(next);
    }
    for (NodeId u = 0; u < n; ++u) {
      if (u == dst || dist[u] == kInf) continue;
      for (NodeId v : adj[u]) {  // ascending, so first match is lowest id
        if (dist[v] == dist[u] - 1) {
          next_hop_[u][dst] = v;
          break;
        }
      }
    }
  }
}

std::optional<NodeId> Network::node_by_address(Address a) const {
  if (!a.assigned()) return std::nullopt;
  for (const Node& node : nodes_) {
    if (node.address() == a) return node.id();
  }
  return std::nullopt;
}

std::optional<NodeId> Network::next_hop(NodeId from, NodeId dst) const {
  if (from >= nodes_.size() || dst >= nodes_.size()) return std::nullopt;
  NodeId hop = next_hop_[from][dst];
  if (hop == kNoHop) return std::nullopt;
  return hop;
}

Node& Network::node(NodeId id) {
  check_node(id);
  return nodes_[id];
}

const Node& Network::node(NodeId id) const {
  check_node(id);
  return nodes_[id];
}

Link& Network::link(LinkId id) {
  if (id >= links_.size()) {
    throw std::out_of_range("unknown link id " + std::to_string(id));
  }
  return links_[id];
}

void Network::install_application(NodeId node_id, std::shared_ptr<Application> app,
                                  des::SimTime start_at, des::SimTime stop_at) {
  check_node(node_id);
  if (!(start_at < stop_at)) {
    throw std::invalid_argument("install_application: start_at must be < stop_at");
  }
  if (start_at < engine_.now()) {
    throw std::invalid_argument("install_application: start_at is in the past");
  }
  app->net_ = this;
  app->node_ = node_id;
  app->state_ = AppState::Installed;
  app->start_at_ = start_at;
  app->stop_at_ = stop_at;
  nodes_[node_id].add_application(app);

  Application* raw = app.get();
  engine_.schedule(start_at.ns - engine_.now().ns, [this, raw, node_id] {
    raw->state_ = AppState::Running;
    tracer_.emit(node_id, "APP_START", {});
    raw->start();
  });
  engine_.schedule(stop_at.ns - engine_.now().ns, [this, raw, node_id] {
    raw->state_ = AppState::Stopped;
    tracer_.emit(node_id, "APP_STOP", {});
    raw->stop();
  });
}

std::uint64_t Network::serialization_ns(const Link& link,
                                        std::size_t size_bytes) const {
  return des::mul_div_round_half_up(static_cast<std::uint64_t>(size_bytes) * 8,
                                    des::kNsPerSecond, link.config().rate_bps);
}

std::vector<std::pair<std::string, std::string>> Network::packet_detail(
    const Packet& p) const {
  return {{"pkt", std::to_string(p.id)},
          {"pkt_kind", std::string(to_string(p.kind))},
          {"src", p.src.to_string()},
          {"dst", p.dst.to_string()},
          {"size", std::to_string(p.size_bytes())}};
}

SendResult Network::send(Application& app, Address dst, PacketKind kind,
                         std::vector<std::uint8_t> payload) {
  if (app.state() != AppState::Running) {
    throw std::logic_error("send: application is not running");
  }
  if (!stack_installed_) {
    throw std::logic_error("send: protocol stack not installed");
  }
  Node& src_node = nodes_[app.node_id()];
  Packet packet;
  packet.id = next_packet_id_++;
  packet.src = src_node.address();
  packet.dst = dst;
  packet.kind = kind;
  packet.payload = std::move(payload);

  ++stats_.sent;
  tracer_.emit(src_node.id(), "PACKET_SEND", packet_detail(packet));

  auto dst_node = node_by_address(dst);
  auto hop = dst_node ? next_hop(src_node.id(), *dst_node) : std::nullopt;
  if (!dst_node || (!hop && *dst_node != src_node.id())) {
    ++stats_.dropped_no_route;
    tracer_.emit(src_node.id(), "NO_ROUTE", packet_detail(packet));
    return {packet.id, SendResult::Status::NoRoute};
  }
  if (*dst_node == src_node.id()) {
    // Loopback: deliver immediately, no link traversal.
    std::uint64_t id = packet.id;
    arrive(src_node.id(), std::move(packet));
    return {id, SendResult::Status::Sent};
  }
  std::uint64_t id = packet.id;
  route_or_drop(src_node.id(), std::move(packet));
  return {id, SendResult::Status::Sent};
}

void Network::route_or_drop(NodeId at, Packet packet) {
  auto dst_node = node_by_address(packet.dst);
  auto hop = dst_node ? next_hop(at, *dst_node) : std::nullopt;
  if (!hop) {
    ++stats_.dropped_no_route;
    tracer_.emit(at, "NO_ROUTE", packet_detail(packet));
    return;
  }
  // Lowest-id link to the chosen hop.
  for (LinkId lid : nodes_[at].devices()) {
    Link& l = links_[lid];
    if (l.other_end(at) == *hop) {
      enqueue_on_link(l, at, std::move(packet));
      return;
    }
  }
  throw std::logic_error("route_or_drop: routing table names a missing link");
}

void Network::enqueue_on_link(Link& link, NodeId from, Packet packet) {
  Link::Direction& dir = link.direction_from(from);
  if (!dir.busy) {
    start_transmission(link, from, std::move(packet));
    return;
  }
  if (dir.queue.size() >= link.config().queue_capacity) {
    ++stats_.dropped_queue;
    auto detail = packet_detail(packet);
    detail.emplace_back("link", std::to_string(link.id()));
    detail.emplace_back("reason", "queue_full");
    tracer_.emit(from, "PACKET_DROP", detail);
    return;
  }
  dir.queue.push_back(std::move(packet));
}

void Network::start_transmission(Link& link, NodeId from, Packet packet) {
  Link::Direction& dir = link.direction_from(from);
  dir.busy = true;
  const std::uint64_t ser_ns = serialization_ns(link, packet.size_bytes());
  const std::uint64_t delay_ns = link.config().delay_ns;
  LinkId lid = link.id();
  NodeId to = link.other_end(from);
  engine_.schedule(ser_ns, [this, lid, from, to, delay_ns,
                            p = std::move(packet)]() mutable {
    // Departure: propagation starts, transmitter freed for the next packet.
    engine_.schedule(delay_ns, [this, to, pkt = std::move(p)]() mutable {
      arrive(to, std::move(pkt));
    });
    Link& l = links_[lid];
    Link::Direction& d = l.direction_from(from);
    if (!d.queue.empty()) {
      Packet next = std::move(d.queue.front());
      d.queue.pop_front();
      d.busy = false;
      start_transmission(l, from, std::move(next));
    } else {
      d.busy = false;
    }
  });
}

void Network::arrive(NodeId at, Packet packet) {
  Node& here = nodes_[at];
  if (here.address() == packet.dst) {
    deliver(here, packet);
    return;
  }
  route_or_drop(at, std::move(packet));
}

void Network::deliver(Node& node, const Packet& packet) {
  bool any_running = false;
  for (const auto& app : node.applications()) {
    if (app->state() == AppState::Running) {
      any_running = true;
      break;
    }
  }
  if (!any_running) {
    ++stats_.dropped_app_stopped;
    tracer_.emit(node.id(), "APP_STOPPED_DROP", packet_detail(packet));
    return;
  }
  ++stats_.delivered;
  tracer_.emit(node.id(), "PACKET_DELIVER", packet_detail(packet));
  for (const auto& app : node.applications()) {
    if (app->state() == AppState::Running) {
      app->receive(packet, engine_.now());
    }
  }
}

}  // namespace edgesim::net
