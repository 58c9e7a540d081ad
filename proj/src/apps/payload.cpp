#include "edgesim/apps/payload.hpp"

#include "edgesim/bytes.hpp"

namespace edgesim::apps {

std::vector<std::uint8_t> encode_sample(const SampleRecord& sample) {
  ByteWriter w;
  w.u64(sample.id);
  w.u32(static_cast<std::uint32_t>(sample.features.size()));
  w.u32(static_cast<std::uint32_t>(sample.targets.size()));
  for (double v : sample.features) w.f64(v);
  for (double v : sample.targets) w.f64(v);
  return w.take();
}

std::optional<SampleRecord> decode_sample(std::span<const std::uint8_t> bytes) {
  try {
    ByteReader r(bytes);
    SampleRecord sample;
    sample.id = r.u64();
    const std::uint32_t nf = r.u32();
    const std::uint32_t nt = r.u32();
    if (r.remaining() != static_cast<std::size_t>(nf + nt) * 8) {
      return std::nullopt;
    }
    sample.features.resize(nf);
    for (auto& v : sample.features) v = r.f64();
    sample.targets.resize(nt);
    for (auto& v : sample.targets) v = r.f64();
    return sample;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::vector<std::uint8_t> encode_data_request(std::uint32_t count) {
  ByteWriter w;
  w.u32(count);
  return w.take();
}

std::optional<std::uint32_t> decode_data_request(
    std::span<const std::uint8_t> bytes) {
  if (bytes.size() != 4) return std::nullopt;
  return ByteReader(bytes).u32();
}

std::vector<std::uint8_t> encode_model_result(const ModelResultRecord& result) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(result.model_bytes.size()));
  w.raw(result.model_bytes);
  w.u32(result.epochs_run);
  w.f64(result.final_loss);
  w.u8(result.stop_reason);
  w.u64(result.digest);
  return w.take();
}

std::optional<ModelResultRecord> decode_model_result(
    std::span<const std::uint8_t> bytes) {
  try {
    ByteReader r(bytes);
    ModelResultRecord result;
    const std::uint32_t model_len = r.u32();
    auto raw = r.raw(model_len);
    result.model_bytes.assign(raw.begin(), raw.end());
    result.epochs_run = r.u32();
    result.final_loss = r.f64();
    result.stop_reason = r.u8();
    result.digest = r.u64();
    if (!r.exhausted()) return std::nullopt;
    return result;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace edgesim::apps
