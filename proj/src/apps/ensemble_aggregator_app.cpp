#include "edgesim/apps/ensemble_aggregator_app.hpp"

#include <stdexcept>

#include "edgesim/dl/serialization.hpp"

namespace edgesim::apps {

dl::Tensor soft_vote(std::span<const dl::Tensor> outputs) {
  if (outputs.empty()) {
    throw std::invalid_argument("soft_vote: no outputs");
  }
  dl::Tensor mean(outputs.front().shape());
  for (const auto& out : outputs) {
    if (!out.same_shape(mean)) {
      throw std::invalid_argument("soft_vote: output shape mismatch");
    }
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] += out[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(outputs.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    mean[i] *= inv;
  }
  return mean;
}

dl::Tensor EnsembleModel::predict(const dl::Tensor& input) const {
  if (members.empty()) {
    throw std::logic_error("EnsembleModel: no members");
  }
  std::vector<dl::Tensor> outputs;
  outputs.reserve(members.size());
  for (const auto& member : members) {
    outputs.push_back(member.forward(input.reshaped(member.input_shape())));
  }
  return soft_vote(outputs);
}

void EnsembleAggregatorApp::receive(const net::Packet& packet, des::SimTime) {
  if (packet.kind != net::PacketKind::ModelResult) {
    return;
  }
  auto record = decode_model_result(packet.payload);
  if (!record) {
    tracer().emit(node_id(), "MALFORMED_PACKET",
                  {{"pkt", packet.id}, {"pkt_kind", to_string(packet.kind)}});
    return;
  }
  std::optional<dl::NeuralNetwork> model;
  try {
    model = dl::deserialize_model(record->model_bytes);
  } catch (const std::invalid_argument&) {
    tracer().emit(node_id(), "MALFORMED_PACKET",
                  {{"pkt", packet.id}, {"pkt_kind", to_string(packet.kind)}});
    return;
  }

  ReceivedResult result{packet.src, std::move(*model), record->digest,
                        record->epochs_run, record->final_loss};
  bool replaced = false;
  for (auto& existing : received_) {
    if (existing.from == packet.src) {
      tracer().emit(node_id(), "DUPLICATE_RESULT",
                    {{"from", packet.src.to_string()}});
      existing = std::move(result);
      replaced = true;
      break;
    }
  }
  if (!replaced) {
    received_.push_back(std::move(result));
  }
  if (!aggregated_ && received_.size() == config_.expected_submodels) {
    aggregate();
  }
}

void EnsembleAggregatorApp::aggregate() {
  aggregated_ = true;
  ensemble_.members.clear();
  std::vector<std::pair<std::string, std::string>> detail;
  detail.emplace_back("submodels", std::to_string(received_.size()));
  for (std::size_t i = 0; i < received_.size(); ++i) {
    ensemble_.members.push_back(received_[i].model);
    detail.emplace_back("digest" + std::to_string(i),
                        std::to_string(received_[i].digest));
  }
  tracer().emit(node_id(), "ENSEMBLE_READY", detail);

  if (!config_.evaluation) {
    return;
  }
  const dl::DataSet& eval = *config_.evaluation;
  submodel_reports_.clear();
  bool classification = true;
  for (const auto& result : received_) {
    const auto& model = result.model;
    classification = classification &&
                     model.layer(model.layer_count() - 1).kind() == "probabilistic";
    submodel_reports_.push_back(
        dl::evaluate(model, eval, config_.evaluation_loss));
  }
  ensemble_report_ = dl::evaluate_predictor(
      [this](const dl::Tensor& input) { return ensemble_.predict(input); },
      classification, eval, config_.evaluation_loss);
}

}  // namespace edgesim::apps
