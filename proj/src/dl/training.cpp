#include "edgesim/dl/training.hpp"

#include <stdexcept>

#include "edgesim/des/random.hpp"
#include "edgesim/dl/serialization.hpp"

namespace edgesim::dl {

std::string_view to_string(StopReason r) {
  return r == StopReason::LossGoalReached ? "LOSS_GOAL_REACHED" : "MAX_EPOCHS";
}

void TrainingStrategy::validate() const {
  if (!(optimizer.learning_rate > 0.0)) {
    throw std::invalid_argument("TrainingStrategy: learning_rate must be > 0");
  }
  if (optimizer.batch_size < 1) {
    throw std::invalid_argument("TrainingStrategy: batch_size must be >= 1");
  }
  if (max_epochs < 1) {
    throw std::invalid_argument("TrainingStrategy: max_epochs must be >= 1");
  }
}

Gradients backward(const NeuralNetwork& net, std::span<const Tensor> inputs,
                   std::span<const Tensor> targets, LossIndex index) {
  if (inputs.size() != targets.size() || inputs.empty()) {
    throw std::invalid_argument("backward: batch size mismatch or empty");
  }
  Gradients grads;
  grads.per_layer.resize(net.layer_count());
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    grads.per_layer[i].assign(net.layer(i).parameter_count(), 0.0);
  }
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    std::vector<Tensor> acts = net.forward_trace(inputs[s]);
    Tensor grad = loss_gradient(index, acts.back(), targets[s], inputs.size());
    for (std::size_t i = net.layer_count(); i-- > 0;) {
      grad = net.layer(i).backward(acts[i], acts[i + 1], grad,
                                   std::span<double>(grads.per_layer[i]));
    }
  }
  return grads;
}

void sgd_step(NeuralNetwork& net, const Gradients& gradients,
              double learning_rate) {
  if (gradients.per_layer.size() != net.layer_count()) {
    throw std::invalid_argument("sgd_step: gradients not congruent with net");
  }
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    Layer& layer = net.layer(i);
    const std::size_t n = layer.parameter_count();
    if (gradients.per_layer[i].size() != n) {
      throw std::invalid_argument("sgd_step: layer gradient size mismatch");
    }
    if (n == 0) continue;
    std::vector<double> params(n);
    layer.get_parameters(params);
    sgd_step(std::span<double>(params),
             std::span<const double>(gradients.per_layer[i]), learning_rate);
    layer.set_parameters(params);
  }
}

void sgd_step(std::span<double> parameters, std::span<const double> gradients,
              double learning_rate) {
  if (parameters.size() != gradients.size()) {
    throw std::invalid_argument("sgd_step: size mismatch");
  }
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    parameters[i] -= learning_rate * gradients[i];
  }
}

double dataset_loss(const NeuralNetwork& net, const DataSet& data,
                    std::span<const std::size_t> rows, LossIndex index) {
  if (rows.empty()) {
    throw std::invalid_argument("dataset_loss: no rows");
  }
  std::vector<Tensor> predicted;
  std::vector<Tensor> targets;
  predicted.reserve(rows.size());
  targets.reserve(rows.size());
  for (std::size_t row : rows) {
    predicted.push_back(
        net.forward(data.input_row(row).reshaped(net.input_shape())));
    targets.push_back(data.target_row(row));
  }
  return batch_loss(index, predicted, targets);
}

TrainingReport train(NeuralNetwork& net, const DataSet& data,
                     const TrainingStrategy& strategy) {
  strategy.validate();
  std::vector<std::size_t> train_rows = data.rows_with(Split::Train);
  if (train_rows.empty()) {
    throw std::invalid_argument("train: dataset has no TRAIN rows");
  }
  std::size_t net_inputs = 1;
  for (std::size_t d : net.input_shape()) net_inputs *= d;
  std::size_t net_outputs = 1;
  for (std::size_t d : net.output_shape()) net_outputs *= d;
  if (net_inputs != data.input_count() || net_outputs != data.target_count()) {
    throw std::invalid_argument(
        "train: network dimensions do not match dataset columns");
  }

  des::RandomStream shuffle_rng(strategy.seed, "shuffle");
  const std::size_t batch_size = strategy.optimizer.batch_size;

  TrainingReport report;
  for (std::size_t epoch = 0; epoch < strategy.max_epochs; ++epoch) {
    shuffle_rng.shuffle(train_rows);
    for (std::size_t begin = 0; begin < train_rows.size(); begin += batch_size) {
      const std::size_t end = std::min(begin + batch_size, train_rows.size());
      std::vector<Tensor> inputs;
      std::vector<Tensor> targets;
      inputs.reserve(end - begin);
      targets.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        inputs.push_back(
            data.input_row(train_rows[i]).reshaped(net.input_shape()));
        targets.push_back(data.target_row(train_rows[i]));
      }
      Gradients grads = backward(net, inputs, targets, strategy.loss);
      sgd_step(net, grads, strategy.optimizer.learning_rate);
    }
    report.epoch_losses.push_back(
        dataset_loss(net, data, train_rows, strategy.loss));
    if (report.epoch_losses.back() <= strategy.loss_goal) {
      report.stop_reason = StopReason::LossGoalReached;
      break;
    }
  }
  report.final_parameters_digest = model_digest(net);
  return report;
}

}  // namespace edgesim::dl
