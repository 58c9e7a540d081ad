#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "edgesim/scenario/config.hpp"
#include "edgesim/scenario/default_scenario.hpp"

using namespace edgesim;
using namespace edgesim::scenario;

namespace {

std::string find_error(const std::vector<std::string>& errors,
                       const std::string& needle) {
  for (const auto& e : errors) {
    if (e.find(needle) != std::string::npos) return e;
  }
  return {};
}

}  // namespace

TEST_CASE("the default scenario parses to the expected topology") {
  ParseResult result = parse_config(default_scenario_text());
  REQUIRE(result.errors.empty());
  REQUIRE(result.config.has_value());
  const ScenarioConfig& config = *result.config;
  CHECK(config.seed == 42);
  CHECK(config.nodes.size() == 8);
  CHECK(config.links.size() == 7);
  for (const auto& link : config.links) {
    CHECK(link.rate_bps == 1'000'000'000);
    CHECK(link.delay_ns == 2'000'000);
  }
  std::size_t terminals = 0, edges = 0, gateways = 0, centers = 0;
  for (const auto& node : config.nodes) {
    switch (node.role) {
      case NodeRole::Terminal: ++terminals; break;
      case NodeRole::Edge: ++edges; break;
      case NodeRole::Gateway: ++gateways; break;
      case NodeRole::DataCenter: ++centers; break;
    }
  }
  CHECK(terminals == 4);
  CHECK(edges == 2);
  CHECK(gateways == 1);
  CHECK(centers == 1);
}

TEST_CASE("the shipped default.scn matches the embedded scenario") {
  std::ifstream in(std::string(EDGESIM_SOURCE_DIR) + "/scenarios/default.scn",
                   std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  CHECK(text.str() == std::string(default_scenario_text()));
}

TEST_CASE("two data centers are rejected, naming both nodes") {
  std::string text{default_scenario_text()};
  text += "\n[node center1]\nrole = DATA_CENTER\n";
  ParseResult result = parse_config(text);
  CHECK_FALSE(result.config.has_value());
  const std::string error = find_error(result.errors, "DATA_CENTER");
  CHECK(error.find("center0") != std::string::npos);
  CHECK(error.find("center1") != std::string::npos);
}

TEST_CASE("dangling link endpoints are named") {
  std::string text{default_scenario_text()};
  text += "\n[link edge0 ghost]\nrate_bps = 1000\ndelay_ns = 0\n"
          "queue_capacity = 1\n";
  ParseResult result = parse_config(text);
  CHECK_FALSE(result.config.has_value());
  CHECK_FALSE(find_error(result.errors, "dangling endpoint 'ghost'").empty());
}

TEST_CASE("unknown keys are reported with their line number") {
  ParseResult result = parse_config(
      "format = 1\n"
      "[scenario]\n"
      "seed = 1\n"
      "stop_at_ns = 10\n"
      "bogus_key = 3\n");
  CHECK_FALSE(result.config.has_value());
  CHECK_FALSE(find_error(result.errors, "line 5").empty());
  CHECK_FALSE(find_error(result.errors, "bogus_key").empty());
}

TEST_CASE("every validation failure is collected, not just the first") {
  ParseResult result = parse_config(
      "format = 1\n"
      "[scenario]\n"
      "seed = 1\n"
      "stop_at_ns = 10\n"
      "[node t]\n"
      "role = TERMINAL\n"
      "target = nowhere\n"
      "[link t ghost]\n"
      "rate_bps = 0\n");
  CHECK(result.errors.size() >= 3);  // bad target, dangling link, rate 0, ...
}

TEST_CASE("missing required scenario keys are reported") {
  ParseResult result = parse_config("format = 1\n[scenario]\nseed = 1\n");
  CHECK_FALSE(result.config.has_value());
  CHECK_FALSE(find_error(result.errors, "stop_at_ns").empty());
}

TEST_CASE("the format header is required") {
  ParseResult result = parse_config("[scenario]\nseed = 1\nstop_at_ns = 5\n");
  CHECK_FALSE(find_error(result.errors, "format").empty());
}

TEST_CASE("parse-render-parse is a fixpoint") {
  ParseResult first = parse_config(default_scenario_text());
  REQUIRE(first.config.has_value());
  const std::string rendered = render_config(*first.config);
  ParseResult second = parse_config(rendered);
  REQUIRE(second.config.has_value());
  CHECK(*first.config == *second.config);
  CHECK(render_config(*second.config) == rendered);
}

TEST_CASE("comments and blank lines are ignored") {
  ParseResult result = parse_config(
      "# a comment\n"
      "format = 1\n\n"
      "[scenario]  # trailing comment\n"
      "seed = 7   # another\n"
      "stop_at_ns = 10\n"
      "[node e]\nrole = EDGE\ncache_capacity = 4\n"
      "[node c]\nrole = DATA_CENTER\n");
  REQUIRE(result.config.has_value());
  CHECK(result.config->seed == 7);
}
