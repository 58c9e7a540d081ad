#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "edgesim/dl/dataset.hpp"
#include "edgesim/dl/loss.hpp"
#include "edgesim/dl/neural_network.hpp"

namespace edgesim::dl {

struct TestingReport {
  double loss = 0.0;
  // Present only for classifiers (probability-vector outputs).
  std::optional<double> accuracy;
  // confusion[actual][predicted]; entries sum to the TEST row count.
  std::vector<std::vector<std::size_t>> confusion;
};

// Argmax with ties resolved to the lowest index.
std::size_t argmax(const Tensor& values);

// Evaluates an arbitrary predictor over the TEST split. When `classification`
// is set, also computes accuracy (argmax of prediction vs argmax of target)
// and the confusion matrix.
TestingReport evaluate_predictor(
    const std::function<Tensor(const Tensor&)>& predict, bool classification,
    const DataSet& data, LossIndex index);

// Loss over TEST rows; accuracy and confusion are added when the final layer
// is probabilistic. Never mutates the network.
TestingReport evaluate(const NeuralNetwork& net, const DataSet& data,
                       LossIndex index = LossIndex::MeanSquaredError);

}  // namespace edgesim::dl
