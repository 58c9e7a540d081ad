#include "edgesim/apps/data_generator_app.hpp"

namespace edgesim::apps {

void DataGeneratorApp::send_next() {
  if (state() != net::AppState::Running || sent_ >= config_.samples_to_send) {
    return;
  }
  SampleRecord sample = source_->next(config_.sample_id_base + sent_);
  net().send(*this, config_.target, net::PacketKind::DataSample,
             encode_sample(sample));
  ++sent_;
  if (sent_ < config_.samples_to_send) {
    engine().schedule(config_.inter_send_gap_ns, [this] { send_next(); });
  }
}

}  // namespace edgesim::apps
