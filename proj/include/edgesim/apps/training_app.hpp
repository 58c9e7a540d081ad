#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "edgesim/apps/payload.hpp"
#include "edgesim/dl/training.hpp"
#include "edgesim/net/network.hpp"

namespace edgesim::apps {

// Network-spec description a TrainingApp instantiates at training time.
struct ModelSpec {
  enum class Kind { Mlp, Lenet };

  Kind kind = Kind::Mlp;
  // mlp
  std::vector<std::size_t> hidden;
  dl::Activation hidden_activation = dl::Activation::Tanh;
  dl::Activation output_activation = dl::Activation::Linear;
  bool probabilistic_output = true;
  // lenet
  std::size_t image_h = 0;
  std::size_t image_w = 0;
  std::size_t image_c = 0;
};

// Builds the described network; parameters are zero until initialized.
dl::NeuralNetwork build_model(const ModelSpec& spec, std::size_t inputs,
                              std::size_t targets);

// Edge computing node application: caches received samples, checks data
// sufficiency, requests neighbor data when short, trains a sub-model on the
// cached set (charging simulated compute time), and uploads the result to the
// data center. Trains at most once per run.
class TrainingApp : public net::Application {
 public:
  struct Config {
    ModelSpec model;
    dl::TrainingStrategy strategy;
    std::size_t sufficiency_threshold = 1;
    std::vector<net::Address> neighbors;
    net::Address center;
    std::uint64_t compute_ns_per_sample_epoch = 0;
    std::uint64_t reply_timeout_ns = 100'000'000;
    std::size_t feature_count = 0;
    std::size_t target_count = 0;
  };

  explicit TrainingApp(Config config) : config_(std::move(config)) {}

  enum class Sufficiency { Sufficient, Insufficient };

  // SUFFICIENT iff cached samples >= threshold. Insufficient checks trigger a
  // neighbor request when none is outstanding; a sufficient check triggers
  // the one-shot training.
  Sufficiency check_sufficiency();

  bool training_started() const { return training_started_; }
  bool trained() const { return trained_; }
  const std::optional<dl::TrainingReport>& report() const { return report_; }
  std::size_t training_samples() const { return training_samples_; }
  std::uint64_t training_duration_ns() const { return training_duration_ns_; }
  std::uint64_t model_result_digest() const { return digest_; }

  std::uint64_t cache_hits() const { return cache_hits_; }
  std::uint64_t cache_misses() const { return cache_misses_; }
  std::uint64_t cache_evictions() const { return cache_evictions_; }

  const Config& config() const { return config_; }

 protected:
  void receive(const net::Packet& packet, des::SimTime at) override;

 private:
  void handle_sample(const net::Packet& packet);
  void handle_request(const net::Packet& packet);
  void request_neighbor_data();
  void on_reply_timeout();
  void train_submodel();
  void on_training_done();
  void send_results_to_center();
  void clear_outstanding_request();

  Config config_;

  bool training_started_ = false;
  bool trained_ = false;
  bool result_sent_ = false;

  bool request_outstanding_ = false;
  std::size_t next_neighbor_ = 0;
  net::Address awaiting_from_;
  std::uint32_t replies_expected_ = 0;
  std::uint32_t replies_received_ = 0;
  des::EventId timeout_event_ = 0;

  std::optional<dl::NeuralNetwork> net_model_;
  std::optional<dl::TrainingReport> report_;
  std::size_t training_samples_ = 0;
  std::uint64_t training_duration_ns_ = 0;
  std::uint64_t digest_ = 0;

  std::uint64_t cache_hits_ = 0;
  std::uint64_t cache_misses_ = 0;
  std::uint64_t cache_evictions_ = 0;
};

}  // namespace edgesim::apps
