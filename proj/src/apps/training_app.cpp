#include "edgesim/apps/training_app.hpp"

#include <stdexcept>

#include "edgesim/dl/lenet.hpp"
#include "edgesim/dl/serialization.hpp"

namespace edgesim::apps {

dl::NeuralNetwork build_model(const ModelSpec& spec, std::size_t inputs,
                              std::size_t targets) {
  if (spec.kind == ModelSpec::Kind::Lenet) {
    if (spec.image_h * spec.image_w * spec.image_c != inputs) {
      throw std::invalid_argument(
          "build_model: lenet image dims do not match input count");
    }
    return dl::build_lenet(spec.image_h, spec.image_w, spec.image_c, targets);
  }
  dl::NetworkBuilder builder({inputs});
  std::size_t width = inputs;
  for (std::size_t h : spec.hidden) {
    builder.add<dl::DenseLayer>(width, h, spec.hidden_activation);
    width = h;
  }
  builder.add<dl::DenseLayer>(width, targets, spec.output_activation);
  if (spec.probabilistic_output) {
    builder.add<dl::ProbabilisticLayer>();
  }
  return builder.build();
}

void TrainingApp::receive(const net::Packet& packet, des::SimTime) {
  switch (packet.kind) {
    case net::PacketKind::DataSample:
      handle_sample(packet);
      break;
    case net::PacketKind::DataRequest:
      handle_request(packet);
      break;
    case net::PacketKind::ModelResult:  // aggregator's concern
    case net::PacketKind::Control:
      break;
  }
}

void TrainingApp::handle_sample(const net::Packet& packet) {
  auto sample = decode_sample(packet.payload);
  if (!sample || sample->features.size() != config_.feature_count ||
      sample->targets.size() != config_.target_count) {
    tracer().emit(node_id(), "MALFORMED_PACKET",
                  {{"pkt", packet.id}, {"pkt_kind", to_string(packet.kind)}});
    return;
  }
  auto* cache = node().cache();
  if (cache == nullptr) {
    throw std::logic_error("TrainingApp: node has no cache");
  }
  auto result = cache->put(sample->id, packet.payload);
  if (result.evicted_key) {
    ++cache_evictions_;
    tracer().emit(node_id(), "CACHE_EVICT", {{"key", *result.evicted_key}});
  }
  const char* outcome =
      result.outcome == cache::LruCache::PutOutcome::Updated
          ? "updated"
          : (result.outcome == cache::LruCache::PutOutcome::InsertedWithEviction
                 ? "inserted_with_eviction"
                 : "inserted");
  tracer().emit(node_id(), "CACHE_PUT",
                {{"key", sample->id}, {"outcome", outcome}});

  const bool is_awaited_reply =
      request_outstanding_ && packet.src == awaiting_from_;
  if (is_awaited_reply) {
    ++replies_received_;
  }

  check_sufficiency();

  // All requested replies in but still short (duplicates or evictions):
  // move on to the next neighbor without waiting for the timeout.
  if (is_awaited_reply && request_outstanding_ && !training_started_ &&
      replies_received_ >= replies_expected_) {
    clear_outstanding_request();
    request_neighbor_data();
  }
}

void TrainingApp::handle_request(const net::Packet& packet) {
  auto count = decode_data_request(packet.payload);
  if (!count) {
    tracer().emit(node_id(), "MALFORMED_PACKET",
                  {{"pkt", packet.id}, {"pkt_kind", to_string(packet.kind)}});
    return;
  }
  auto* cache = node().cache();
  if (cache == nullptr) return;
  // Most-recent first, non-promoting, so sharing does not disturb recency.
  const auto keys = cache->keys_mru_order();
  const std::size_t n = std::min<std::size_t>(*count, keys.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto* bytes = cache->peek(keys[i]);
    net().send(*this, packet.src, net::PacketKind::DataSample, *bytes);
  }
}

TrainingApp::Sufficiency TrainingApp::check_sufficiency() {
  const auto* cache = node().cache();
  const std::size_t len = cache ? cache->len() : 0;
  const bool sufficient = len >= config_.sufficiency_threshold;
  if (sufficient) {
    if (!training_started_) {
      train_submodel();
    }
    return Sufficiency::Sufficient;
  }
  if (!training_started_ && !request_outstanding_) {
    request_neighbor_data();
  }
  return Sufficiency::Insufficient;
}

void TrainingApp::request_neighbor_data() {
  const auto* cache = node().cache();
  const std::size_t len = cache ? cache->len() : 0;
  if (next_neighbor_ >= config_.neighbors.size()) {
    tracer().emit(node_id(), "INSUFFICIENT_FALLBACK",
                  {{"cached", len},
                   {"threshold", config_.sufficiency_threshold}});
    train_submodel();
    return;
  }
  const net::Address neighbor = config_.neighbors[next_neighbor_++];
  const auto deficit =
      static_cast<std::uint32_t>(config_.sufficiency_threshold - len);
  net().send(*this, neighbor, net::PacketKind::DataRequest,
             encode_data_request(deficit));
  tracer().emit(node_id(), "DATA_REQUEST",
                {{"to", neighbor.to_string()}, {"count", deficit}});
  request_outstanding_ = true;
  awaiting_from_ = neighbor;
  replies_expected_ = deficit;
  replies_received_ = 0;
  timeout_event_ =
      engine().schedule(config_.reply_timeout_ns, [this] { on_reply_timeout(); });
}

void TrainingApp::on_reply_timeout() {
  timeout_event_ = 0;
  if (training_started_ || state() != net::AppState::Running) {
    return;
  }
  request_outstanding_ = false;
  const auto* cache = node().cache();
  const std::size_t len = cache ? cache->len() : 0;
  if (len >= config_.sufficiency_threshold) {
    check_sufficiency();
  } else {
    request_neighbor_data();
  }
}

void TrainingApp::clear_outstanding_request() {
  if (timeout_event_ != 0) {
    engine().cancel(timeout_event_);
    timeout_event_ = 0;
  }
  request_outstanding_ = false;
}

void TrainingApp::train_submodel() {
  if (training_started_) return;
  clear_outstanding_request();
  auto* cache = node().cache();
  if (cache == nullptr || cache->len() == 0) {
    tracer().emit(node_id(), "TRAIN_SKIPPED_EMPTY", {});
    return;
  }
  training_started_ = true;
  training_samples_ = cache->len();
  tracer().emit(node_id(), "TRAINING_START", {{"samples", training_samples_}});

  // Dataset snapshot: every cached sample, all rows TRAIN. Collection goes
  // through promoting lookups, which are the cache's hit path.
  dl::DataSet dataset =
      dl::DataSet::with_layout(config_.feature_count, config_.target_count);
  for (std::uint64_t key : cache->keys_mru_order()) {
    const auto* bytes = cache->get(key);
    ++cache_hits_;
    tracer().emit(node_id(), "CACHE_HIT", {{"key", key}});
    auto sample = decode_sample(*bytes);
    if (!sample) {
      throw std::logic_error("TrainingApp: cached sample no longer decodes");
    }
    std::vector<double> row = sample->features;
    row.insert(row.end(), sample->targets.begin(), sample->targets.end());
    dataset.add_row(row, dl::Split::Train);
  }

  net_model_ =
      build_model(config_.model, config_.feature_count, config_.target_count);
  net_model_->initialize(config_.strategy.seed);
  report_ = dl::train(*net_model_, dataset, config_.strategy);
  digest_ = report_->final_parameters_digest;

  // Simulated cost: coefficient * samples * epochs actually run. Zero
  // coefficient recovers instantaneous training.
  training_duration_ns_ = config_.compute_ns_per_sample_epoch *
                          training_samples_ * report_->epochs_run();
  engine().schedule(training_duration_ns_, [this] { on_training_done(); });
}

void TrainingApp::on_training_done() {
  if (state() != net::AppState::Running) {
    return;  // stopped before the training window elapsed
  }
  trained_ = true;
  tracer().emit(node_id(), "TRAINING_DONE",
                {{"epochs", report_->epochs_run()},
                 {"loss", report_->final_loss()},
                 {"digest", digest_},
                 {"duration_ns", training_duration_ns_}});
  send_results_to_center();
}

void TrainingApp::send_results_to_center() {
  if (result_sent_) return;
  result_sent_ = true;
  ModelResultRecord record;
  record.model_bytes = dl::serialize_model(*net_model_);
  record.epochs_run = static_cast<std::uint32_t>(report_->epochs_run());
  record.final_loss = report_->final_loss();
  record.stop_reason = static_cast<std::uint8_t>(report_->stop_reason);
  record.digest = digest_;
  net().send(*this, config_.center, net::PacketKind::ModelResult,
             encode_model_result(record));
  tracer().emit(node_id(), "MODEL_RESULT_SENT", {{"digest", digest_}});
}

}  // namespace edgesim::apps
