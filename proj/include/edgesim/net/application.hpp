#pragma once

#include <functional>

#include "edgesim/des/engine.hpp"
#include "edgesim/des/sim_time.hpp"
#include "edgesim/des/trace.hpp"
#include "edgesim/net/packet.hpp"

namespace edgesim::net {

class Network;
class Node;

enum class AppState { Installed, Running, Stopped };

// Simulated user program installed on a node. Driven by start/stop events
// scheduled at install time; receives packets addressed to its node only
// while running. Subclass the hooks or register a receive handler.
class Application {
 public:
  using ReceiveHandler = std::function<void(const Packet&, des::SimTime)>;

  virtual ~Application() = default;

  AppState state() const { return state_; }
  NodeId node_id() const { return node_; }
  des::SimTime start_at() const { return start_at_; }
  des::SimTime stop_at() const { return stop_at_; }

  // Registers a handler invoked in arrival order for every delivered packet.
  void on_receive(ReceiveHandler handler) { handler_ = std::move(handler); }

 protected:
  virtual void start() {}
  virtual void stop() {}
  virtual void receive(const Packet& packet, des::SimTime at) {
    if (handler_) handler_(packet, at);
  }

  Network& net() { return *net_; }
  des::Engine& engine();
  des::Tracer& tracer();
  Node& node();

 private:
  friend class Network;

  Network* net_ = nullptr;
  NodeId node_ = 0;
  AppState state_ = AppState::Installed;
  des::SimTime start_at_;
  des::SimTime stop_at_;
  ReceiveHandler handler_;
};

}  // namespace edgesim::net
