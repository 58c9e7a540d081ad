#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace edgesim::apps {

// DATA_SAMPLE wire format: sample id (8 bytes) + feature count (4) + target
// count (4) + 64-bit float values, features then targets, little-endian.
struct SampleRecord {
  std::uint64_t id = 0;
  std::vector<double> features;
  std::vector<double> targets;
};

std::vector<std::uint8_t> encode_sample(const SampleRecord& sample);
std::optional<SampleRecord> decode_sample(std::span<const std::uint8_t> bytes);

// DATA_REQUEST wire format: requested sample count (4 bytes).
std::vector<std::uint8_t> encode_data_request(std::uint32_t count);
std::optional<std::uint32_t> decode_data_request(
    std::span<const std::uint8_t> bytes);

// MODEL_RESULT wire format: serialized model (length-prefixed) + report
// summary (epochs run, final loss, stop reason, parameter digest).
struct ModelResultRecord {
  std::vector<std::uint8_t> model_bytes;
  std::uint32_t epochs_run = 0;
  double final_loss = 0.0;
  std::uint8_t stop_reason = 0;
  std::uint64_t digest = 0;
};

std::vector<std::uint8_t> encode_model_result(const ModelResultRecord& result);
std::optional<ModelResultRecord> decode_model_result(
    std::span<const std::uint8_t> bytes);

}  // namespace edgesim::apps
