#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgesim/dl/training.hpp"

namespace edgesim::dl {

// One entry in a candidate set. Candidates differing in hidden width express
// neuron selection; candidates differing in input columns express input
// selection. The builder receives an independent init seed derived as
// strategy.seed + candidate index. `max_epochs` overrides the strategy's
// budget; 0 evaluates the candidate as built, without training.
struct ModelCandidate {
  std::string name;
  std::function<NeuralNetwork(std::uint64_t init_seed)> build;
  std::optional<std::size_t> max_epochs;
};

struct CandidateReport {
  std::string name;
  TrainingReport training;
  double validation_loss = 0.0;
};

struct SelectionResult {
  std::size_t best_index = 0;
  std::vector<CandidateReport> candidates;
};

// Trains every candidate and picks the lowest validation loss, ties resolved
// to the lowest index.
SelectionResult select_model(std::span<const ModelCandidate> candidates,
                             const DataSet& data,
                             const TrainingStrategy& strategy);

}  // namespace edgesim::dl
