#include "edgesim/des/engine.hpp"

#include <utility>

namespace edgesim::des {

EventId Engine::schedule(std::uint64_t delay_ns, std::function<void()> action) {
  const EventId id = next_id_++;
  queue_.push(Scheduled{now_ + delay_ns, id, std::move(action)});
  pending_.insert(id);
  return id;
}

bool Engine::cancel(EventId id) {
  if (pending_.erase(id) == 0) {
    return false;
  }
  ++cancelled_count_;
  return true;
}

RunStats Engine::run_until(SimTime limit) {
  if (running_) {
    throw std::logic_error("Engine::run_until: engine already running");
  }
  running_ = true;
  RunStats stats;
  while (!queue_.empty() && queue_.top().at <= limit) {
    Scheduled ev = std::move(const_cast<Scheduled&>(queue_.top()));
    queue_.pop();
    if (pending_.erase(ev.id) == 0) {
      continue;  // cancelled
    }
    now_ = ev.at;
    current_event_ = ev.id;
    try {
      ev.action();
    } catch (const std::exception& e) {
      current_event_ = 0;
      running_ = false;
      throw CallbackError(ev.id, e.what());
    }
    current_event_ = 0;
    ++executed_count_;
    ++stats.events_executed;
  }
  running_ = false;
  stats.final_time = now_;
  return stats;
}

}  // namespace edgesim::des
