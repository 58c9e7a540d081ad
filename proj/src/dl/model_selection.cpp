#include "edgesim/dl/model_selection.hpp"

#include <stdexcept>

#include "edgesim/dl/serialization.hpp"

namespace edgesim::dl {

SelectionResult select_model(std::span<const ModelCandidate> candidates,
                             const DataSet& data,
                             const TrainingStrategy& strategy) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_model: no candidates");
  }
  const std::vector<std::size_t> validation_rows =
      data.rows_with(Split::Validation);
  if (validation_rows.empty()) {
    throw std::invalid_argument("select_model: dataset has no VALIDATION rows");
  }

  SelectionResult result;
  result.candidates.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const ModelCandidate& candidate = candidates[i];
    NeuralNetwork net = candidate.build(strategy.seed + i);
    CandidateReport report;
    report.name = candidate.name;
    const std::size_t epochs = candidate.max_epochs.value_or(strategy.max_epochs);
    if (epochs > 0) {
      TrainingStrategy local = strategy;
      local.max_epochs = epochs;
      report.training = train(net, data, local);
    } else {
      report.training.final_parameters_digest = model_digest(net);
    }
    report.validation_loss =
        dataset_loss(net, data, validation_rows, strategy.loss);
    result.candidates.push_back(std::move(report));
  }

  result.best_index = 0;
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (result.candidates[i].validation_loss <
        result.candidates[result.best_index].validation_loss) {
      result.best_index = i;
    }
  }
  return result;
}

}  // namespace edgesim::dl
