#include "edgesim/dl/serialization.hpp"

#include <stdexcept>

#include "edgesim/bytes.hpp"
#include "edgesim/des/random.hpp"

namespace edgesim::dl {

namespace {

constexpr std::uint32_t kMagic = 0x4d4c4445;  // "EDLM"
constexpr std::uint32_t kVersion = 1;

enum class LayerTag : std::uint8_t {
  Dense = 0,
  Scaling = 1,
  Unscaling = 2,
  Bounding = 3,
  Probabilistic = 4,
  Conv2d = 5,
  Pooling = 6,
};

void write_doubles(ByteWriter& w, const std::vector<double>& values) {
  w.u32(static_cast<std::uint32_t>(values.size()));
  for (double v : values) w.f64(v);
}

std::vector<double> read_doubles(ByteReader& r) {
  const std::uint32_t n = r.u32();
  std::vector<double> values(n);
  for (auto& v : values) v = r.f64();
  return values;
}

void write_layer(ByteWriter& w, const Layer& layer) {
  if (auto* d = dynamic_cast<const DenseLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Dense));
    w.u32(static_cast<std::uint32_t>(d->inputs()));
    w.u32(static_cast<std::uint32_t>(d->outputs()));
    w.u8(static_cast<std::uint8_t>(d->activation()));
    write_doubles(w, d->weights());
    write_doubles(w, d->bias());
  } else if (auto* s = dynamic_cast<const ScalingLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Scaling));
    write_doubles(w, s->mean());
    write_doubles(w, s->stddev());
  } else if (auto* u = dynamic_cast<const UnscalingLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Unscaling));
    write_doubles(w, u->mean());
    write_doubles(w, u->stddev());
  } else if (auto* b = dynamic_cast<const BoundingLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Bounding));
    write_doubles(w, b->lower());
    write_doubles(w, b->upper());
  } else if (dynamic_cast<const ProbabilisticLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Probabilistic));
  } else if (auto* c = dynamic_cast<const Conv2dLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Conv2d));
    w.u32(static_cast<std::uint32_t>(c->in_channels()));
    w.u32(static_cast<std::uint32_t>(c->out_channels()));
    w.u32(static_cast<std::uint32_t>(c->kernel_h()));
    w.u32(static_cast<std::uint32_t>(c->kernel_w()));
    w.u32(static_cast<std::uint32_t>(c->stride()));
    write_doubles(w, c->kernels());
    write_doubles(w, c->bias());
  } else if (auto* p = dynamic_cast<const PoolingLayer*>(&layer)) {
    w.u8(static_cast<std::uint8_t>(LayerTag::Pooling));
    w.u8(static_cast<std::uint8_t>(p->mode()));
    w.u32(static_cast<std::uint32_t>(p->window()));
    w.u32(static_cast<std::uint32_t>(p->stride()));
  } else {
    throw std::logic_error("serialize_model: unknown layer kind");
  }
}

std::unique_ptr<Layer> read_layer(ByteReader& r) {
  const auto tag = static_cast<LayerTag>(r.u8());
  switch (tag) {
    case LayerTag::Dense: {
      const std::size_t in = r.u32();
      const std::size_t out = r.u32();
      const std::uint8_t act = r.u8();
      if (act > static_cast<std::uint8_t>(Activation::Relu)) {
        throw std::invalid_argument("deserialize_model: bad activation tag");
      }
      auto layer = std::make_unique<DenseLayer>(in, out,
                                                static_cast<Activation>(act));
      auto weights = read_doubles(r);
      auto bias = read_doubles(r);
      if (weights.size() != in * out || bias.size() != out) {
        throw std::invalid_argument("deserialize_model: dense size mismatch");
      }
      layer->weights() = std::move(weights);
      layer->bias() = std::move(bias);
      return layer;
    }
    case LayerTag::Scaling:
      return std::make_unique<ScalingLayer>(read_doubles(r), read_doubles(r));
    case LayerTag::Unscaling:
      return std::make_unique<UnscalingLayer>(read_doubles(r), read_doubles(r));
    case LayerTag::Bounding:
      return std::make_unique<BoundingLayer>(read_doubles(r), read_doubles(r));
    case LayerTag::Probabilistic:
      return std::make_unique<ProbabilisticLayer>();
    case LayerTag::Conv2d: {
      const std::size_t in_ch = r.u32();
      const std::size_t out_ch = r.u32();
      const std::size_t kh = r.u32();
      const std::size_t kw = r.u32();
      const std::size_t stride = r.u32();
      auto layer = std::make_unique<Conv2dLayer>(in_ch, out_ch, kh, kw, stride);
      auto kernels = read_doubles(r);
      auto bias = read_doubles(r);
      if (kernels.size() != in_ch * out_ch * kh * kw || bias.size() != out_ch) {
        throw std::invalid_argument("deserialize_model: conv2d size mismatch");
      }
      layer->kernels() = std::move(kernels);
      layer->bias() = std::move(bias);
      return layer;
    }
    case LayerTag::Pooling: {
      const std::uint8_t mode = r.u8();
      if (mode > static_cast<std::uint8_t>(PoolMode::Average)) {
        throw std::invalid_argument("deserialize_model: bad pool mode");
      }
      const std::size_t window = r.u32();
      const std::size_t stride = r.u32();
      return std::make_unique<PoolingLayer>(static_cast<PoolMode>(mode), window,
                                            stride);
    }
  }
  throw std::invalid_argument("deserialize_model: unknown layer tag");
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const NeuralNetwork& net) {
  ByteWriter w;
  w.u32(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(net.input_shape().size()));
  for (std::size_t d : net.input_shape()) {
    w.u32(static_cast<std::uint32_t>(d));
  }
  w.u32(static_cast<std::uint32_t>(net.layer_count()));
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    write_layer(w, net.layer(i));
  }
  return w.take();
}

NeuralNetwork deserialize_model(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  try {
    if (r.u32() != kMagic) {
      throw std::invalid_argument("deserialize_model: bad magic");
    }
    if (r.u32() != kVersion) {
      throw std::invalid_argument("deserialize_model: unsupported version");
    }
    const std::uint32_t rank = r.u32();
    if (rank == 0 || rank > 8) {
      throw std::invalid_argument("deserialize_model: bad input rank");
    }
    std::vector<std::size_t> input_shape(rank);
    for (auto& d : input_shape) d = r.u32();
    const std::uint32_t n_layers = r.u32();
    std::vector<std::unique_ptr<Layer>> layers;
    layers.reserve(n_layers);
    for (std::uint32_t i = 0; i < n_layers; ++i) {
      layers.push_back(read_layer(r));
    }
    if (!r.exhausted()) {
      throw std::invalid_argument("deserialize_model: trailing bytes");
    }
    return NeuralNetwork(std::move(input_shape), std::move(layers));
  } catch (const std::exception& e) {
    // Normalize all decode failures (including shape-chain errors) so callers
    // can treat any throw as a malformed payload.
    throw std::invalid_argument(e.what());
  }
}

std::uint64_t model_digest(const NeuralNetwork& net) {
  const auto bytes = serialize_model(net);
  return des::fnv1a64(std::span<const std::uint8_t>(bytes));
}

}  // namespace edgesim::dl
