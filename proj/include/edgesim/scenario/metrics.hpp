#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgesim/net/network.hpp"

namespace edgesim::scenario {

struct EdgeNodeMetrics {
  std::string name;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t cache_evictions = 0;
  std::uint64_t epochs_run = 0;
  double final_loss = 0.0;
  std::uint64_t training_duration_ns = 0;
  std::uint64_t training_samples = 0;
  std::uint64_t digest = 0;
};

struct EnsembleMetrics {
  bool ready = false;
  std::size_t submodels = 0;
  std::vector<double> submodel_accuracy;
  std::vector<double> submodel_loss;
  std::optional<double> ensemble_accuracy;
  std::optional<double> ensemble_loss;
};

struct MetricsSummary {
  net::NetStats packets;
  std::vector<EdgeNodeMetrics> edges;  // ordered by node id
  EnsembleMetrics ensemble;
  // Measured per run, printed in the human summary only; the metrics file
  // must be byte-identical across identical runs.
  double wall_seconds = 0.0;
};

// Line-oriented `key = value` rendering with stable key order, starting with
// a "format = 1" header. Excludes wall-clock runtime.
std::string render_metrics_file(const MetricsSummary& metrics);

void write_metrics_file(const MetricsSummary& metrics, const std::string& path);

// Console summary, wall clock included.
std::string render_metrics_human(const MetricsSummary& metrics);

// Parses a metrics file back into key/value pairs (for consistency checks).
std::vector<std::pair<std::string, std::string>> read_metrics_file(
    const std::string& path);

}  // namespace edgesim::scenario
