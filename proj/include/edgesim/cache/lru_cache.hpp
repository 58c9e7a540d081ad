#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace edgesim::cache {

// Bounded least-recently-used store keyed by 64-bit data-unit ids. The most
// recently inserted or accessed entry sits at the head; inserting into a full
// cache evicts the tail. `get` promotes; `contains`/`peek` do not.
class LruCache {
 public:
  using Key = std::uint64_t;
  using Value = std::vector<std::uint8_t>;

  enum class PutOutcome { Inserted, Updated, InsertedWithEviction };

  struct PutResult {
    PutOutcome outcome;
    std::optional<Key> evicted_key;
  };

  explicit LruCache(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ < 1) {
      throw std::invalid_argument("LruCache: capacity must be >= 1");
    }
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t len() const { return entries_.size(); }

  PutResult put(Key key, Value value) {
    auto it = index_.find(key);
    if (it != index_.end()) {
      it->second->second = std::move(value);
      promote(it->second);
      return {PutOutcome::Updated, std::nullopt};
    }
    std::optional<Key> evicted;
    if (entries_.size() == capacity_) {
      evicted = entries_.back().first;
      index_.erase(entries_.back().first);
      entries_.pop_back();
    }
    entries_.emplace_front(key, std::move(value));
    index_.emplace(key, entries_.begin());
    if (evicted) {
      return {PutOutcome::InsertedWithEviction, evicted};
    }
    return {PutOutcome::Inserted, std::nullopt};
  }

  // Promoting lookup; nullptr signals a miss (rendered as -1 in traces).
  const Value* get(Key key) {
    auto it = index_.find(key);
    if (it == index_.end()) return nullptr;
    promote(it->second);
    return &entries_.front().second;
  }

  // Pure queries: neither updates recency.
  bool contains(Key key) const { return index_.count(key) != 0; }

  const Value* peek(Key key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &it->second->second;
  }

  // Keys from most to least recently used.
  std::vector<Key> keys_mru_order() const {
    std::vector<Key> keys;
    keys.reserve(entries_.size());
    for (const auto& [key, value] : entries_) {
      keys.push_back(key);
    }
    return keys;
  }

 private:
  using Entry = std::pair<Key, Value>;

  void promote(std::list<Entry>::iterator it) {
    entries_.splice(entries_.begin(), entries_, it);
  }

  std::size_t capacity_;
  std::list<Entry> entries_;  // front = most recently used
  std::unordered_map<Key, std::list<Entry>::iterator> index_;
};

}  // namespace edgesim::cache
