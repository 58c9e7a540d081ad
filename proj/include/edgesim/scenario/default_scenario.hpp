#pragma once

#include <string_view>

namespace edgesim::scenario {

// The shipped edge ensemble-learning scenario: four terminal devices feeding
// two edge computing nodes, a gateway, and a remote data center, all over
// gigabit point-to-point links. Identical to scenarios/default.scn.
std::string_view default_scenario_text();

}  // namespace edgesim::scenario
