#pragma once

#include <memory>

#include "edgesim/apps/sample_source.hpp"
#include "edgesim/net/network.hpp"

namespace edgesim::apps {

// Terminal device: emits samples_to_send DATA_SAMPLE packets toward its edge
// node, one every inter_send_gap_ns starting at app start, each carrying one
// serialized (input, target) row with a globally unique sample id.
class DataGeneratorApp : public net::Application {
 public:
  struct Config {
    net::Address target;
    std::uint64_t samples_to_send = 0;
    std::uint64_t inter_send_gap_ns = 0;
    std::uint64_t sample_id_base = 0;  // ids are base + sequence number
  };

  DataGeneratorApp(Config config, std::unique_ptr<SampleSource> source)
      : config_(config), source_(std::move(source)) {}

  std::uint64_t samples_sent() const { return sent_; }

 protected:
  void start() override { send_next(); }

 private:
  void send_next();

  Config config_;
  std::unique_ptr<SampleSource> source_;
  std::uint64_t sent_ = 0;
};

}  // namespace edgesim::apps
