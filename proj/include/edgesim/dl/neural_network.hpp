#pragma once

#include <memory>
#include <span>
#include <vector>

#include "edgesim/des/random.hpp"
#include "edgesim/dl/layers.hpp"
#include "edgesim/dl/tensor.hpp"

namespace edgesim::dl {

// Ordered layer pipeline. Shape compatibility between adjacent layers is
// checked once at construction against the declared input shape.
class NeuralNetwork {
 public:
  NeuralNetwork(std::vector<std::size_t> input_shape,
                std::vector<std::unique_ptr<Layer>> layers);

  NeuralNetwork(const NeuralNetwork& other);
  NeuralNetwork& operator=(const NeuralNetwork& other);
  NeuralNetwork(NeuralNetwork&&) = default;
  NeuralNetwork& operator=(NeuralNetwork&&) = default;

  const std::vector<std::size_t>& input_shape() const { return input_shape_; }
  const std::vector<std::size_t>& output_shape() const {
    return stage_shapes_.back();
  }
  // Input shape of layer i (== output shape of layer i-1).
  const std::vector<std::size_t>& stage_shape(std::size_t i) const {
    return stage_shapes_[i];
  }

  std::size_t layer_count() const { return layers_.size(); }
  const Layer& layer(std::size_t i) const { return *layers_[i]; }
  Layer& layer(std::size_t i) { return *layers_[i]; }

  Tensor forward(const Tensor& input) const;

  // Forward pass keeping every intermediate activation;
  // result[0] is the input, result[i+1] the output of layer i.
  std::vector<Tensor> forward_trace(const Tensor& input) const;

  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> values);

  // Draws fresh parameters for every trainable layer from the stream;
  // layers are visited in order so the result is reproducible.
  void initialize(des::RandomStream& rng);
  void initialize(std::uint64_t seed);

 private:
  void validate_input(const Tensor& input) const;

  std::vector<std::size_t> input_shape_;
  std::vector<std::unique_ptr<Layer>> layers_;
  // stage_shapes_[i] = shape entering layer i; back() = network output shape.
  std::vector<std::vector<std::size_t>> stage_shapes_;
};

// Convenience builder for layer lists.
class NetworkBuilder {
 public:
  explicit NetworkBuilder(std::vector<std::size_t> input_shape)
      : input_shape_(std::move(input_shape)) {}

  NetworkBuilder& add(std::unique_ptr<Layer> layer) {
    layers_.push_back(std::move(layer));
    return *this;
  }

  template <typename L, typename... Args>
  NetworkBuilder& add(Args&&... args) {
    layers_.push_back(std::make_unique<L>(std::forward<Args>(args)...));
    return *this;
  }

  NeuralNetwork build() {
    return NeuralNetwork(std::move(input_shape_), std::move(layers_));
  }

 private:
  std::vector<std::size_t> input_shape_;
  std::vector<std::unique_ptr<Layer>> layers_;
};

}  // namespace edgesim::dl
