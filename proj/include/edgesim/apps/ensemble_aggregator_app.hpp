#pragma once

#include <optional>
#include <vector>

#include "edgesim/apps/payload.hpp"
#include "edgesim/dl/testing.hpp"
#include "edgesim/net/network.hpp"

namespace edgesim::apps {

// Soft-vote ensemble: prediction is the uniform average of the members'
// output vectors for a given input.
struct EnsembleModel {
  std::vector<dl::NeuralNetwork> members;

  dl::Tensor predict(const dl::Tensor& input) const;
};

// Elementwise mean of equally shaped output vectors.
dl::Tensor soft_vote(std::span<const dl::Tensor> outputs);

// Data-center application: collects one sub-model per edge node and, once all
// expected results arrived, forms the soft-vote ensemble (exactly once). With
// an evaluation dataset configured it also scores each sub-model and the
// ensemble.
class EnsembleAggregatorApp : public net::Application {
 public:
  struct Config {
    std::size_t expected_submodels = 0;
    std::optional<dl::DataSet> evaluation;
    dl::LossIndex evaluation_loss = dl::LossIndex::MeanSquaredError;
  };

  struct ReceivedResult {
    net::Address from;
    dl::NeuralNetwork model;
    std::uint64_t digest = 0;
    std::uint32_t epochs_run = 0;
    double final_loss = 0.0;
  };

  explicit EnsembleAggregatorApp(Config config) : config_(std::move(config)) {}

  bool aggregated() const { return aggregated_; }
  const std::vector<ReceivedResult>& received() const { return received_; }
  const std::vector<dl::TestingReport>& submodel_reports() const {
    return submodel_reports_;
  }
  const std::optional<dl::TestingReport>& ensemble_report() const {
    return ensemble_report_;
  }

  // Valid once aggregated.
  const EnsembleModel& ensemble() const { return ensemble_; }

 protected:
  void receive(const net::Packet& packet, des::SimTime at) override;

 private:
  void aggregate();

  Config config_;
  std::vector<ReceivedResult> received_;  // ordered by first arrival
  bool aggregated_ = false;
  EnsembleModel ensemble_;
  std::vector<dl::TestingReport> submodel_reports_;
  std::optional<dl::TestingReport> ensemble_report_;
};

}  // namespace edgesim::apps
