#pragma once

#include <memory>
#include <vector>

#include "edgesim/cache/lru_cache.hpp"
#include "edgesim/net/packet.hpp"

namespace edgesim::net {

class Application;

// Basic connected entity: owns its attached link endpoints, an optional LRU
// cache, and the applications installed on it.
class Node {
 public:
  explicit Node(NodeId id) : id_(id) {}

  NodeId id() const { return id_; }

  Address address() const { return address_; }
  void set_address(Address a) { address_ = a; }

  const std::vector<LinkId>& devices() const { return devices_; }
  void add_device(LinkId link) { devices_.push_back(link); }

  void enable_cache(std::size_t capacity) {
    cache_ = std::make_unique<cache::LruCache>(capacity);
  }
  cache::LruCache* cache() { return cache_.get(); }
  const cache::LruCache* cache() const { return cache_.get(); }

  const std::vector<std::shared_ptr<Application>>& applications() const {
    return apps_;
  }
  void add_application(std::shared_ptr<Application> app) {
    apps_.push_back(std::move(app));
  }

 private:
  NodeId id_;
  Address address_;
  std::vector<LinkId> devices_;
  std::unique_ptr<cache::LruCache> cache_;
  std::vector<std::shared_ptr<Application>> apps_;
};

}  // namespace edgesim::net
