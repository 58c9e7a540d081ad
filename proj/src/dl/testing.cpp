#include "edgesim/dl/testing.hpp"

#include <stdexcept>

namespace edgesim::dl {

std::size_t argmax(const Tensor& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

TestingReport evaluate_predictor(
    const std::function<Tensor(const Tensor&)>& predict, bool classification,
    const DataSet& data, LossIndex index) {
  const std::vector<std::size_t> rows = data.rows_with(Split::Test);
  if (rows.empty()) {
    throw std::invalid_argument("evaluate: dataset has no TEST rows");
  }
  TestingReport report;
  const std::size_t classes = data.target_count();
  if (classification) {
    report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  }
  std::vector<Tensor> predicted;
  std::vector<Tensor> targets;
  predicted.reserve(rows.size());
  targets.reserve(rows.size());
  std::size_t correct = 0;
  for (std::size_t row : rows) {
    Tensor out = predict(data.input_row(row));
    Tensor target = data.target_row(row);
    if (classification) {
      const std::size_t actual = argmax(target);
      const std::size_t chosen = argmax(out);
      report.confusion[actual][chosen] += 1;
      if (actual == chosen) ++correct;
    }
    predicted.push_back(std::move(out));
    targets.push_back(std::move(target));
  }
  report.loss = batch_loss(index, predicted, targets);
  if (classification) {
    report.accuracy = static_cast<double>(correct) /
                      static_cast<double>(rows.size());
  }
  return report;
}

TestingReport evaluate(const NeuralNetwork& net, const DataSet& data,
                       LossIndex index) {
  const bool classification =
      net.layer(net.layer_count() - 1).kind() == "probabilistic";
  return evaluate_predictor(
      [&net](const Tensor& input) {
        return net.forward(input.reshaped(net.input_shape()));
      },
      classification, data, index);
}

}  // namespace edgesim::dl
