#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgesim::scenario {

enum class NodeRole { Terminal, Edge, Gateway, DataCenter };

std::string_view to_string(NodeRole role);

struct NodeSpec {
  std::string name;
  NodeRole role = NodeRole::Terminal;
  std::size_t cache_capacity = 0;  // edge nodes
  // terminal fields
  std::string target;
  std::uint64_t samples = 0;
  std::uint64_t send_gap_ns = 0;
  // edge fields
  std::vector<std::string> neighbors;

  bool operator==(const NodeSpec&) const = default;
};

struct LinkSpec {
  std::string a;
  std::string b;
  std::uint64_t rate_bps = 0;
  std::uint64_t delay_ns = 0;
  std::size_t queue_capacity = 0;

  bool operator==(const LinkSpec&) const = default;
};

struct DatasetSpec {
  std::string kind = "two_gaussians";  // two_gaussians | xor | file
  std::size_t features = 2;
  std::size_t classes = 2;
  std::size_t eval_samples = 0;  // held-out evaluation set size; 0 disables
  std::string path;              // file kind only

  bool operator==(const DatasetSpec&) const = default;
};

struct ModelConfig {
  std::string kind = "mlp";  // mlp | lenet
  std::vector<std::size_t> hidden = {8};
  std::string hidden_activation = "tanh";
  std::string output_activation = "linear";
  bool probabilistic = true;
  std::size_t image_h = 0;
  std::size_t image_w = 0;
  std::size_t image_c = 0;

  bool operator==(const ModelConfig&) const = default;
};

struct TrainingConfig {
  std::string loss = "cross_entropy";  // mse | cross_entropy
  double learning_rate = 0.1;
  std::size_t batch_size = 16;
  std::size_t max_epochs = 60;
  double loss_goal = 0.05;
  std::size_t sufficiency_threshold = 1;
  std::uint64_t compute_ns_per_sample_epoch = 0;
  std::uint64_t reply_timeout_ns = 100'000'000;

  bool operator==(const TrainingConfig&) const = default;
};

struct AppTimes {
  std::uint64_t terminal_start_ns = 0;
  std::uint64_t terminal_stop_ns = 3'600'000'000'000;
  std::uint64_t edge_start_ns = 0;
  std::uint64_t edge_stop_ns = 3'600'000'000'000;
  std::uint64_t center_start_ns = 0;
  std::uint64_t center_stop_ns = 3'600'000'000'000;

  bool operator==(const AppTimes&) const = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  std::uint64_t stop_at_ns = 0;
  DatasetSpec dataset;
  ModelConfig model;
  TrainingConfig training;
  AppTimes apps;
  std::vector<NodeSpec> nodes;  // creation order = declaration order
  std::vector<LinkSpec> links;

  bool operator==(const ScenarioConfig&) const = default;

  const NodeSpec* find_node(const std::string& name) const;
  std::optional<std::size_t> node_index(const std::string& name) const;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;  // set only when errors is empty
  std::vector<std::string> errors;
};

// Parses the line-oriented `key = value` scenario format, collecting every
// syntax and validation error (with line or field references) instead of
// stopping at the first.
ParseResult parse_config(std::string_view text);

// Semantic checks shared by the parser and run_scenario.
std::vector<std::string> validate_config(const ScenarioConfig& config);

// Canonical rendering; parse(render(parse(x))) == parse(x).
std::string render_config(const ScenarioConfig& config);

}  // namespace edgesim::scenario
