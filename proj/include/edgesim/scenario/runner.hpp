#pragma once

#include <string>

#include "edgesim/scenario/config.hpp"
#include "edgesim/scenario/metrics.hpp"

namespace edgesim::scenario {

// Builds the configured topology (nodes, links, protocol stack, sender and
// receiver applications), runs the engine to stop_at_ns, and writes the trace
// and metrics files. Deterministic given (config, seed). Throws
// std::invalid_argument on config errors and std::runtime_error (or
// des::CallbackError) on runtime failures.
MetricsSummary run_scenario(const ScenarioConfig& config,
                            const std::string& trace_path,
                            const std::string& metrics_path);

}  // namespace edgesim::scenario
