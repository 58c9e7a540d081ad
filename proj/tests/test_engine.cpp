#include <algorithm>
#include <vector>

#include <doctest.h>

#include "edgesim/des/engine.hpp"

using namespace edgesim;

TEST_CASE("events execute in timestamp order") {
  des::Engine engine;
  std::vector<int> order;
  engine.schedule(5, [&] { order.push_back(5); });
  engine.schedule(3, [&] { order.push_back(3); });
  auto stats = engine.run_until({100});
  CHECK(order == std::vector<int>{3, 5});
  CHECK(stats.events_executed == 2);
  CHECK(stats.final_time.ns == 5);
}

TEST_CASE("equal timestamps break ties FIFO by scheduling order") {
  des::Engine engine;
  std::vector<int> order;
  engine.schedule(0, [&] { order.push_back(1); });
  engine.schedule(0, [&] { order.push_back(2); });
  engine.run_until({0});
  CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("delays add to the current time") {
  des::Engine engine;
  std::uint64_t fired_at = 0;
  engine.schedule(1'000, [&] {
    engine.schedule(2'012'000, [&] { fired_at = engine.now().ns; });
  });
  engine.run_until({10'000'000});
  CHECK(fired_at == 2'013'000);
}

TEST_CASE("now() inside a callback equals the event's fire time") {
  des::Engine engine;
  std::vector<std::uint64_t> seen;
  engine.schedule(7, [&] { seen.push_back(engine.now().ns); });
  engine.schedule(9, [&] { seen.push_back(engine.now().ns); });
  engine.run_until({100});
  CHECK(seen == std::vector<std::uint64_t>{7, 9});
}

TEST_CASE("cancel") {
  des::Engine engine;
  bool ran = false;
  auto id = engine.schedule(5, [&] { ran = true; });

  SUBCASE("pending event is suppressed") {
    CHECK(engine.cancel(id));
    engine.run_until({100});
    CHECK_FALSE(ran);
  }
  SUBCASE("second cancel returns false") {
    CHECK(engine.cancel(id));
    CHECK_FALSE(engine.cancel(id));
  }
  SUBCASE("cancel after firing returns false") {
    engine.run_until({100});
    CHECK(ran);
    CHECK_FALSE(engine.cancel(id));
  }
  SUBCASE("unknown id returns false") { CHECK_FALSE(engine.cancel(999)); }
}

TEST_CASE("run_until limit") {
  des::Engine engine;

  SUBCASE("empty queue leaves the clock untouched") {
    auto stats = engine.run_until({100});
    CHECK(stats.events_executed == 0);
    CHECK(stats.final_time.ns == 0);
  }
  SUBCASE("events past the limit stay pending") {
    int count = 0;
    for (std::uint64_t t : {3, 5, 5, 9}) {
      engine.schedule(t, [&] { ++count; });
    }
    auto stats = engine.run_until({5});
    CHECK(count == 3);
    CHECK(stats.final_time.ns == 5);
    CHECK(engine.pending_count() == 1);
  }
}

TEST_CASE("callback errors abort the run and carry the event id") {
  des::Engine engine;
  engine.schedule(1, [] {});
  auto bad = engine.schedule(2, [] { throw std::runtime_error("boom"); });
  bool after_ran = false;
  engine.schedule(3, [&] { after_ran = true; });
  try {
    engine.run_until({10});
    FAIL("expected CallbackError");
  } catch (const des::CallbackError& e) {
    CHECK(e.event() == bad);
  }
  CHECK_FALSE(after_ran);
}

TEST_CASE("run_until is not reentrant") {
  des::Engine engine;
  engine.schedule(1, [&] { CHECK_THROWS_AS(engine.run_until({5}), std::logic_error); });
  engine.run_until({10});
}

TEST_CASE("random-delay schedule matches a sorted-list oracle") {
  des::Engine engine(99);
  auto rng = engine.rng_stream("delays");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> oracle;  // (time, id)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> executed;
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t delay = rng.next_below(5'000);
    auto id = engine.schedule(delay, [&executed, &engine] {
      executed.emplace_back(engine.now().ns, engine.current_event());
    });
    oracle.emplace_back(delay, id);
  }
  std::sort(oracle.begin(), oracle.end());
  engine.run_until({1'000'000});

  REQUIRE(executed.size() == oracle.size());
  CHECK(executed == oracle);
  CHECK(std::is_sorted(executed.begin(), executed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; }));
}

TEST_CASE("scheduled = executed + cancelled when drained") {
  des::Engine engine(7);
  auto rng = engine.rng_stream("mix");
  std::vector<des::EventId> ids;
  for (int i = 0; i < 500; ++i) {
    ids.push_back(engine.schedule(rng.next_below(100), [] {}));
  }
  std::uint64_t cancelled = 0;
  for (std::size_t i = 0; i < ids.size(); i += 3) {
    if (engine.cancel(ids[i])) ++cancelled;
  }
  engine.run_until({1'000});
  CHECK(engine.pending_count() == 0);
  CHECK(engine.cancelled_count() == cancelled);
  CHECK(engine.executed_count() + engine.cancelled_count() ==
        engine.scheduled_count());
}
