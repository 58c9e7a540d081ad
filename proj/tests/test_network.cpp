#include <memory>
#include <vector>

#include <doctest.h>

#include "edgesim/des/engine.hpp"
#include "edgesim/des/trace.hpp"
#include "edgesim/net/network.hpp"

using namespace edgesim;

namespace {

struct Harness {
  des::Engine engine;
  des::Tracer tracer;  // unopened: emits are no-ops
  net::Network network{engine, tracer};

  Harness() { tracer.attach(engine); }
};

std::shared_ptr<net::Application> install_app(Harness& h, net::NodeId node,
                                              std::uint64_t start = 0,
                                              std::uint64_t stop = 3'600'000'000'000) {
  auto app = std::make_shared<net::Application>();
  h.network.install_application(node, app, {start}, {stop});
  return app;
}

}  // namespace

TEST_CASE("create_nodes assigns fresh sequential ids") {
  Harness h;
  auto ids = h.network.create_nodes(8);
  REQUIRE(ids.size() == 8);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CHECK(ids[i] == i);
  }
  CHECK(h.network.create_nodes(1).front() == 8);
  CHECK_THROWS_AS(h.network.create_nodes(0), std::invalid_argument);
}

TEST_CASE("connect_p2p validates endpoints and rate") {
  Harness h;
  auto ids = h.network.create_nodes(2);
  CHECK_THROWS_AS(h.network.connect_p2p(ids[0], ids[0], 1000, 0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(h.network.connect_p2p(ids[0], ids[1], 0, 0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(h.network.connect_p2p(ids[0], 99, 1000, 0, 10),
                  std::out_of_range);
  auto link = h.network.connect_p2p(ids[0], ids[1], 1000, 0, 10);
  CHECK(h.network.link(link).other_end(ids[0]) == ids[1]);
}

TEST_CASE("install_stack assigns 10.0.0.k by creation order") {
  Harness h;
  h.network.create_nodes(8);
  auto addresses = h.network.install_stack();
  REQUIRE(addresses.size() == 8);
  CHECK(addresses.front().to_string() == "10.0.0.1");
  CHECK(addresses.back().to_string() == "10.0.0.8");
  CHECK_THROWS_AS(h.network.install_stack(), std::invalid_argument);
}

TEST_CASE("tree topology routes terminal -> edge -> gateway -> center") {
  Harness h;
  // 0-3 terminals, 4-5 edges, 6 gateway, 7 center, as in the default layout.
  auto ids = h.network.create_nodes(8);
  h.network.connect_p2p(0, 4, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(1, 4, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(2, 5, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(3, 5, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(4, 6, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(5, 6, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(6, 7, 1'000'000'000, 2'000'000, 100);
  h.network.install_stack();

  // Three hops: terminal 0 -> edge 4 -> gateway 6 -> center 7.
  CHECK(h.network.next_hop(0, 7) == ids[4]);
  CHECK(h.network.next_hop(4, 7) == ids[6]);
  CHECK(h.network.next_hop(6, 7) == ids[7]);
}

TEST_CASE("equal-cost routes pick the lowest next-hop id") {
  Harness h;
  // Diamond: 0-1, 0-2, 1-3, 2-3. Both routes 0->3 cost 2; next hop must be 1.
  h.network.create_nodes(4);
  h.network.connect_p2p(0, 1, 1000, 0, 10);
  h.network.connect_p2p(0, 2, 1000, 0, 10);
  h.network.connect_p2p(1, 3, 1000, 0, 10);
  h.network.connect_p2p(2, 3, 1000, 0, 10);
  h.network.install_stack();
  CHECK(h.network.next_hop(0, 3) == 1);
}

TEST_CASE("idle-link delivery equals serialization plus propagation") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1'000'000'000, 2'000'000, 100);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 1);
  std::vector<std::uint64_t> arrivals;
  receiver->on_receive(
      [&](const net::Packet&, des::SimTime at) { arrivals.push_back(at.ns); });

  SUBCASE("1460-byte payload, 1500 on the wire") {
    h.engine.schedule(1'000, [&] {
      h.network.send(*sender, h.network.node(1).address(),
                     net::PacketKind::Control,
                     std::vector<std::uint8_t>(1460, 0));
    });
    h.engine.run_until({10'000'000});
    REQUIRE(arrivals.size() == 1);
    CHECK(arrivals[0] == 1'000 + 12'000 + 2'000'000);
  }
  SUBCASE("empty payload still pays the 40-byte header") {
    h.engine.schedule(1'000, [&] {
      h.network.send(*sender, h.network.node(1).address(),
                     net::PacketKind::Control, {});
    });
    h.engine.run_until({10'000'000});
    REQUIRE(arrivals.size() == 1);
    CHECK(arrivals[0] == 1'000 + 320 + 2'000'000);
  }
}

TEST_CASE("multi-hop idle latency is the analytic hop sum") {
  Harness h;
  h.network.create_nodes(4);
  h.network.connect_p2p(0, 1, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(1, 2, 1'000'000'000, 2'000'000, 100);
  h.network.connect_p2p(2, 3, 1'000'000'000, 2'000'000, 100);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 3);
  std::uint64_t arrival = 0;
  receiver->on_receive(
      [&](const net::Packet&, des::SimTime at) { arrival = at.ns; });
  h.engine.schedule(5'000, [&] {
    h.network.send(*sender, h.network.node(3).address(),
                   net::PacketKind::Control, std::vector<std::uint8_t>(1460, 0));
  });
  h.engine.run_until({100'000'000});
  CHECK(arrival == 5'000 + 3 * (12'000 + 2'000'000));
}

TEST_CASE("send without a route is surfaced and traced") {
  Harness h;
  h.network.create_nodes(3);
  h.network.connect_p2p(0, 1, 1000, 0, 10);
  h.network.install_stack();  // node 2 is isolated
  auto sender = install_app(h, 0);
  net::SendResult result;
  h.engine.schedule(1, [&] {
    result = h.network.send(*sender, h.network.node(2).address(),
                            net::PacketKind::Control, {});
  });
  h.engine.run_until({1'000});
  CHECK_FALSE(result.routed());
  CHECK(h.network.stats().sent == 1);
  CHECK(h.network.stats().dropped_no_route == 1);
}

TEST_CASE("per-link FIFO and receive order") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1'000'000, 1'000, 100);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 1);
  std::vector<std::uint64_t> seen;
  receiver->on_receive([&](const net::Packet& p, des::SimTime) {
    seen.push_back(p.payload.empty() ? 0 : p.payload[0]);
  });
  h.engine.schedule(1, [&] {
    for (std::uint8_t i = 1; i <= 5; ++i) {
      h.network.send(*sender, h.network.node(1).address(),
                     net::PacketKind::Control, std::vector<std::uint8_t>{i});
    }
  });
  h.engine.run_until({1'000'000'000});
  CHECK(seen == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("transmitter serializes one packet at a time") {
  Harness h;
  h.network.create_nodes(2);
  // 41 bytes on wire at 1 Mbps -> 328'000 ns serialization each.
  h.network.connect_p2p(0, 1, 1'000'000, 0, 100);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 1);
  std::vector<std::uint64_t> arrivals;
  receiver->on_receive(
      [&](const net::Packet&, des::SimTime at) { arrivals.push_back(at.ns); });
  h.engine.schedule(1, [&] {
    for (int i = 0; i < 3; ++i) {
      h.network.send(*sender, h.network.node(1).address(),
                     net::PacketKind::Control, std::vector<std::uint8_t>{0});
    }
  });
  h.engine.run_until({10'000'000});
  REQUIRE(arrivals.size() == 3);
  const std::uint64_t ser = 328'000;
  CHECK(arrivals[1] - arrivals[0] == ser);
  CHECK(arrivals[2] - arrivals[1] == ser);
}

TEST_CASE("full queues drop packets and conservation holds") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1'000'000, 1'000, 2);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 1);
  int received = 0;
  receiver->on_receive([&](const net::Packet&, des::SimTime) { ++received; });
  h.engine.schedule(1, [&] {
    for (int i = 0; i < 10; ++i) {
      h.network.send(*sender, h.network.node(1).address(),
                     net::PacketKind::Control, std::vector<std::uint8_t>{0});
    }
  });
  h.engine.run_until({1'000'000'000});
  const auto& stats = h.network.stats();
  CHECK(stats.sent == 10);
  CHECK(stats.dropped_queue == 7);  // 1 transmitting + 2 queued survive
  CHECK(stats.delivered == 3);
  CHECK(received == 3);
  CHECK(stats.in_flight() == 0);
}

TEST_CASE("packets for a stopped application are dropped and counted") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1'000'000'000, 2'000'000, 100);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto receiver = install_app(h, 1, 0, 1'000);  // stops at t=1000
  int received = 0;
  receiver->on_receive([&](const net::Packet&, des::SimTime) { ++received; });
  h.engine.schedule(5'000, [&] {
    h.network.send(*sender, h.network.node(1).address(),
                   net::PacketKind::Control, {});
  });
  h.engine.run_until({1'000'000'000});
  CHECK(received == 0);
  CHECK(h.network.stats().dropped_app_stopped == 1);
  CHECK(h.network.stats().delivered == 0);
}

TEST_CASE("conservation over a multi-sender run") {
  Harness h;
  h.network.create_nodes(5);  // 4 senders -> 1 receiver, star
  for (net::NodeId i = 0; i < 4; ++i) {
    h.network.connect_p2p(i, 4, 10'000'000, 1'000, 3);
  }
  h.network.install_stack();
  std::vector<std::shared_ptr<net::Application>> senders;
  for (net::NodeId i = 0; i < 4; ++i) {
    senders.push_back(install_app(h, i));
  }
  auto receiver = install_app(h, 4);
  std::uint64_t handler_calls = 0;
  receiver->on_receive([&](const net::Packet&, des::SimTime) { ++handler_calls; });
  for (net::NodeId i = 0; i < 4; ++i) {
    for (int k = 0; k < 25; ++k) {
      h.engine.schedule(1 + k * 10, [&h, &senders, i] {
        h.network.send(*senders[i], h.network.node(4).address(),
                       net::PacketKind::Control, std::vector<std::uint8_t>(100));
      });
    }
  }
  h.engine.run_until({10'000'000'000});
  const auto& stats = h.network.stats();
  CHECK(stats.sent == 100);
  CHECK(handler_calls == stats.delivered);
  CHECK(stats.sent == stats.delivered + stats.dropped_queue +
                          stats.dropped_no_route + stats.dropped_app_stopped);
  CHECK(stats.in_flight() == 0);
}

TEST_CASE("install_application validates its window") {
  Harness h;
  h.network.create_nodes(1);
  auto app = std::make_shared<net::Application>();
  CHECK_THROWS_AS(
      h.network.install_application(0, app, {1'000}, {1'000}),
      std::invalid_argument);
  CHECK_THROWS_AS(h.network.install_application(0, app, {2'000}, {1'000}),
                  std::invalid_argument);
}

TEST_CASE("two applications on one node run independently") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1'000'000'000, 0, 10);
  h.network.install_stack();
  auto sender = install_app(h, 0);
  auto app_a = install_app(h, 1);
  auto app_b = install_app(h, 1);
  int a_count = 0, b_count = 0;
  app_a->on_receive([&](const net::Packet&, des::SimTime) { ++a_count; });
  app_b->on_receive([&](const net::Packet&, des::SimTime) { ++b_count; });
  h.engine.schedule(1, [&] {
    h.network.send(*sender, h.network.node(1).address(),
                   net::PacketKind::Control, {});
  });
  h.engine.run_until({1'000'000});
  CHECK(a_count == 1);
  CHECK(b_count == 1);
}

TEST_CASE("sending from a non-running application is a logic error") {
  Harness h;
  h.network.create_nodes(2);
  h.network.connect_p2p(0, 1, 1000, 0, 10);
  h.network.install_stack();
  auto app = std::make_shared<net::Application>();
  h.network.install_application(0, app, {1'000}, {2'000});
  CHECK_THROWS_AS(h.network.send(*app, h.network.node(1).address(),
                                 net::PacketKind::Control, {}),
                  std::logic_error);
}
