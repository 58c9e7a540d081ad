#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "edgesim/des/random.hpp"
#include "edgesim/des/sim_time.hpp"

namespace edgesim::des {

using EventId = std::uint64_t;

struct RunStats {
  std::uint64_t events_executed = 0;
  SimTime final_time;
};

// Thrown when an event callback raises; carries the offending event id.
class CallbackError : public std::runtime_error {
 public:
  CallbackError(EventId event, const std::string& what)
      : std::runtime_error("event " + std::to_string(event) + ": " + what),
        event_(event) {}

  EventId event() const { return event_; }

 private:
  EventId event_;
};

// Deterministic single-threaded discrete-event engine. Events execute in
// (fire_at, id) lexicographic order; ids are assigned in scheduling order, so
// ties at equal timestamps resolve FIFO. The clock only moves when an event
// executes and never decreases.
class Engine {
 public:
  explicit Engine(std::uint64_t seed = 0) : seed_(seed) {}

  SimTime now() const { return now_; }
  std::uint64_t seed() const { return seed_; }

  // Id of the event currently executing, 0 outside callbacks.
  EventId current_event() const { return current_event_; }

  EventId schedule(std::uint64_t delay_ns, std::function<void()> action);

  // True if the event was pending and is now suppressed; false if it already
  // fired, was already cancelled, or was never scheduled.
  bool cancel(EventId id);

  // Executes every non-cancelled event with fire_at <= limit. Not reentrant.
  RunStats run_until(SimTime limit);

  // Stream derived from (engine seed, name); same pair, same sequence.
  RandomStream rng_stream(std::string_view name) const {
    return RandomStream(seed_, name);
  }

  std::uint64_t scheduled_count() const { return next_id_ - 1; }
  std::uint64_t executed_count() const { return executed_count_; }
  std::uint64_t cancelled_count() const { return cancelled_count_; }
  std::uint64_t pending_count() const { return pending_.size(); }

 private:
  struct Scheduled {
    SimTime at;
    EventId id;
    std::function<void()> action;
  };

  struct Later {
    bool operator()(const Scheduled& a, const Scheduled& b) const {
      if (a.at != b.at) return b.at < a.at;
      return b.id < a.id;
    }
  };

  std::uint64_t seed_;
  SimTime now_;
  EventId next_id_ = 1;
  EventId current_event_ = 0;
  bool running_ = false;
  std::uint64_t executed_count_ = 0;
  std::uint64_t cancelled_count_ = 0;
  std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue_;
  std::unordered_set<EventId> pending_;
};

}  // namespace edgesim::des
