#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "edgesim/des/engine.hpp"
#include "edgesim/des/trace.hpp"

using namespace edgesim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string temp_path(const char* name) {
  return std::string("edgesim_test_") + name;
}

}  // namespace

TEST_CASE("trace lines have the fixed field order") {
  des::Engine engine;
  des::Tracer tracer;
  tracer.attach(engine);
  const std::string path = temp_path("trace_format.txt");
  tracer.open(path);
  engine.schedule(12, [&] {
    tracer.emit(3, "PACKET_SEND", {{"pkt", std::uint64_t{1}}, {"size", 40}});
  });
  engine.schedule(15, [&] { tracer.emit(std::nullopt, "APP_START", {}); });
  engine.run_until({100});
  tracer.close();

  const std::string text = slurp(path);
  CHECK(text ==
        "format = 1\n"
        "time_ns=12 node=3 kind=PACKET_SEND event=1 pkt=1 size=40\n"
        "time_ns=15 node=- kind=APP_START event=2\n");
  std::remove(path.c_str());
}

TEST_CASE("parse_trace_line round-trips emitted records") {
  auto rec = des::parse_trace_line(
      "time_ns=42 node=7 kind=CACHE_MISS event=9 key=5 value=-1");
  REQUIRE(rec.has_value());
  CHECK(rec->time.ns == 42);
  CHECK(rec->node == 7);
  CHECK(rec->kind == "CACHE_MISS");
  CHECK(rec->event == 9);
  REQUIRE(rec->detail.size() == 2);
  CHECK(*rec->find("key") == "5");
  CHECK(*rec->find("value") == "-1");
  CHECK(rec->find("missing") == nullptr);

  CHECK_FALSE(des::parse_trace_line("format = 1").has_value());
  CHECK_FALSE(des::parse_trace_line("").has_value());
  CHECK_FALSE(des::parse_trace_line("nonsense").has_value());
}

TEST_CASE("identical runs produce byte-identical traces") {
  auto run = [](const std::string& path) {
    des::Engine engine(42);
    des::Tracer tracer;
    tracer.attach(engine);
    tracer.open(path);
    auto rng = engine.rng_stream("d");
    for (int i = 0; i < 50; ++i) {
      engine.schedule(rng.next_below(100), [&tracer, i] {
        tracer.emit(static_cast<std::uint32_t>(i % 4), "TICK", {{"i", i}});
      });
    }
    engine.run_until({1'000});
    tracer.close();
  };
  const std::string p1 = temp_path("trace_a.txt");
  const std::string p2 = temp_path("trace_b.txt");
  run(p1);
  run(p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(!slurp(p1).empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("doubles render shortest round-trip") {
  CHECK(des::format_double(0.5) == "0.5");
  CHECK(des::format_double(1.0) == "1");
  CHECK(des::format_double(-2.25) == "-2.25");
}
