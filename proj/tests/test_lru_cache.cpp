#include <map>
#include <vector>

#include <doctest.h>

#include "edgesim/cache/lru_cache.hpp"
#include "edgesim/des/random.hpp"

using namespace edgesim;
using cache::LruCache;

namespace {

LruCache::Value val(std::uint8_t b) { return LruCache::Value{b}; }

// Reference model: map plus per-key last-access counter; evict the minimum
// counter. Used by the oracle-equivalence property test.
class ReferenceLru {
 public:
  explicit ReferenceLru(std::size_t capacity) : capacity_(capacity) {}

  struct PutResult {
    bool updated = false;
    std::optional<std::uint64_t> evicted;
  };

  PutResult put(std::uint64_t key, LruCache::Value value) {
    ++clock_;
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      it->second = {std::move(value), clock_};
      return {true, std::nullopt};
    }
    PutResult result;
    if (entries_.size() == capacity_) {
      auto victim = entries_.begin();
      for (auto e = entries_.begin(); e != entries_.end(); ++e) {
        if (e->second.second < victim->second.second) victim = e;
      }
      result.evicted = victim->first;
      entries_.erase(victim);
    }
    entries_[key] = {std::move(value), clock_};
    return result;
  }

  const LruCache::Value* get(std::uint64_t key) {
    ++clock_;
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.second = clock_;
    return &it->second.first;
  }

  bool contains(std::uint64_t key) const { return entries_.count(key) != 0; }
  std::size_t len() const { return entries_.size(); }

  std::map<std::uint64_t, LruCache::Value> contents() const {
    std::map<std::uint64_t, LruCache::Value> out;
    for (const auto& [k, v] : entries_) out[k] = v.first;
    return out;
  }

 private:
  std::size_t capacity_;
  std::uint64_t clock_ = 0;
  std::map<std::uint64_t, std::pair<LruCache::Value, std::uint64_t>> entries_;
};

}  // namespace

TEST_CASE("capacity must be at least one") {
  CHECK_THROWS_AS(LruCache(0), std::invalid_argument);
}

TEST_CASE("put evicts the tail at capacity") {
  LruCache cache(2);
  CHECK(cache.put(1, val(1)).outcome == LruCache::PutOutcome::Inserted);
  CHECK(cache.put(2, val(2)).outcome == LruCache::PutOutcome::Inserted);
  auto result = cache.put(3, val(3));
  CHECK(result.outcome == LruCache::PutOutcome::InsertedWithEviction);
  CHECK(result.evicted_key == 1);  // key 1 was the tail
  CHECK(cache.len() == 2);
  CHECK_FALSE(cache.contains(1));
}

TEST_CASE("put of an existing key updates and promotes") {
  LruCache cache(4);
  cache.put(1, val(1));
  auto result = cache.put(1, val(9));
  CHECK(result.outcome == LruCache::PutOutcome::Updated);
  CHECK(cache.len() == 1);
  CHECK((*cache.get(1))[0] == 9);
}

TEST_CASE("capacity one holds only the newest entry") {
  LruCache cache(1);
  cache.put(1, val(1));
  cache.put(2, val(2));
  CHECK(cache.len() == 1);
  CHECK(cache.get(1) == nullptr);
  CHECK((*cache.get(2))[0] == 2);
}

TEST_CASE("get promotes, protecting the entry from the next eviction") {
  LruCache cache(2);
  cache.put(1, val(1));
  cache.put(2, val(2));
  CHECK(cache.get(1) != nullptr);      // 1 promoted; 2 is now the tail
  auto result = cache.put(3, val(3));
  CHECK(result.evicted_key == 2);
  CHECK(cache.get(2) == nullptr);      // miss
  CHECK(cache.contains(1));
}

TEST_CASE("get on an empty cache misses") {
  LruCache cache(2);
  CHECK(cache.get(7) == nullptr);
  CHECK(cache.len() == 0);
}

TEST_CASE("contains and peek do not change eviction order") {
  LruCache cache(2);
  cache.put(1, val(1));
  cache.put(2, val(2));
  CHECK(cache.contains(1));
  CHECK(cache.peek(1) != nullptr);
  auto result = cache.put(3, val(3));
  CHECK(result.evicted_key == 1);  // 1 stayed the tail despite the queries
}

TEST_CASE("len counts distinct keys") {
  LruCache cache(8);
  cache.put(1, val(1));
  cache.put(2, val(2));
  cache.put(3, val(3));
  CHECK(cache.len() == 3);
  CHECK_FALSE(cache.contains(9));
}

TEST_CASE("keys_mru_order lists most recent first") {
  LruCache cache(4);
  cache.put(1, val(1));
  cache.put(2, val(2));
  cache.put(3, val(3));
  cache.get(1);
  CHECK(cache.keys_mru_order() == std::vector<std::uint64_t>{1, 3, 2});
}

TEST_CASE("random operations match the reference model") {
  for (std::size_t capacity : {1u, 2u, 8u, 64u}) {
    CAPTURE(capacity);
    LruCache cache(capacity);
    ReferenceLru reference(capacity);
    des::RandomStream rng(1234, "lru-" + std::to_string(capacity));
    for (int op = 0; op < 20'000; ++op) {
      const std::uint64_t key = rng.next_below(capacity * 3 + 2);
      const auto choice = rng.next_below(4);
      if (choice < 2) {
        const auto b = static_cast<std::uint8_t>(rng.next_below(256));
        auto got = cache.put(key, val(b));
        auto expected = reference.put(key, val(b));
        REQUIRE((got.outcome == LruCache::PutOutcome::Updated) ==
                expected.updated);
        REQUIRE(got.evicted_key == expected.evicted);
      } else if (choice == 2) {
        const auto* got = cache.get(key);
        const auto* expected = reference.get(key);
        REQUIRE((got == nullptr) == (expected == nullptr));
        if (got) REQUIRE(*got == *expected);
      } else {
        REQUIRE(cache.contains(key) == reference.contains(key));
      }
      REQUIRE(cache.len() == reference.len());
      REQUIRE(cache.len() <= capacity);
    }
    std::map<std::uint64_t, LruCache::Value> contents;
    for (auto key : cache.keys_mru_order()) {
      contents[key] = *cache.peek(key);
    }
    REQUIRE(contents == reference.contents());
  }
}
