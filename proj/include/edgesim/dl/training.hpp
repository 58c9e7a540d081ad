#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "edgesim/dl/dataset.hpp"
#include "edgesim/dl/loss.hpp"
#include "edgesim/dl/neural_network.hpp"

namespace edgesim::dl {

struct SgdOptimizer {
  double learning_rate = 0.01;
  std::size_t batch_size = 1;
};

// Loss + optimizer + stopping criteria. The seed drives epoch shuffling
// (stream "shuffle"); parameter initialization draws from the same seed via
// NeuralNetwork::initialize, so scenarios stay reproducible end to end.
struct TrainingStrategy {
  LossIndex loss = LossIndex::MeanSquaredError;
  SgdOptimizer optimizer;
  std::size_t max_epochs = 100;
  double loss_goal = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class StopReason : std::uint8_t { LossGoalReached, MaxEpochs };

std::string_view to_string(StopReason r);

struct TrainingReport {
  std::vector<double> epoch_losses;  // mean TRAIN loss after each epoch's updates
  StopReason stop_reason = StopReason::MaxEpochs;
  std::uint64_t final_parameters_digest = 0;

  std::size_t epochs_run() const { return epoch_losses.size(); }
  double final_loss() const {
    return epoch_losses.empty() ? 0.0 : epoch_losses.back();
  }
};

// Per-layer flat parameter gradients, congruent with the network's layers.
struct Gradients {
  std::vector<std::vector<double>> per_layer;
};

// Exact analytic gradients of the mean batch loss with respect to every
// trainable parameter.
Gradients backward(const NeuralNetwork& net, std::span<const Tensor> inputs,
                   std::span<const Tensor> targets, LossIndex index);

// p <- p - learning_rate * g, elementwise.
void sgd_step(NeuralNetwork& net, const Gradients& gradients,
              double learning_rate);
void sgd_step(std::span<double> parameters, std::span<const double> gradients,
              double learning_rate);

// Mean loss of the network over the given rows.
double dataset_loss(const NeuralNetwork& net, const DataSet& data,
                    std::span<const std::size_t> rows, LossIndex index);

// Shuffled mini-batch SGD over the TRAIN split. Epoch loss is computed after
// the epoch's updates over the full TRAIN split; training stops when it
// reaches loss_goal or after max_epochs. The network is trained in place from
// its current parameters (initialize it first).
TrainingReport train(NeuralNetwork& net, const DataSet& data,
                     const TrainingStrategy& strategy);

}  // namespace edgesim::dl
