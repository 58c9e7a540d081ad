#include "edgesim/dl/neural_network.hpp"

#include <stdexcept>

namespace edgesim::dl {

NeuralNetwork::NeuralNetwork(std::vector<std::size_t> input_shape,
                             std::vector<std::unique_ptr<Layer>> layers)
    : input_shape_(std::move(input_shape)), layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw std::invalid_argument("NeuralNetwork: at least one layer required");
  }
  stage_shapes_.reserve(layers_.size() + 1);
  stage_shapes_.push_back(input_shape_);
  for (const auto& layer : layers_) {
    stage_shapes_.push_back(layer->output_shape(stage_shapes_.back()));
  }
}

NeuralNetwork::NeuralNetwork(const NeuralNetwork& other)
    : input_shape_(other.input_shape_), stage_shapes_(other.stage_shapes_) {
  layers_.reserve(other.layers_.size());
  for (const auto& layer : other.layers_) {
    layers_.push_back(layer->clone());
  }
}

NeuralNetwork& NeuralNetwork::operator=(const NeuralNetwork& other) {
  if (this != &other) {
    NeuralNetwork copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void NeuralNetwork::validate_input(const Tensor& input) const {
  if (input.shape() != input_shape_) {
    throw ShapeError("input", "expected " + shape_to_string(input_shape_) +
                                  ", got " + shape_to_string(input.shape()));
  }
}

Tensor NeuralNetwork::forward(const Tensor& input) const {
  validate_input(input);
  Tensor current = input;
  for (const auto& layer : layers_) {
    current = layer->forward(current);
  }
  return current;
}

std::vector<Tensor> NeuralNetwork::forward_trace(const Tensor& input) const {
  validate_input(input);
  std::vector<Tensor> acts;
  acts.reserve(layers_.size() + 1);
  acts.push_back(input);
  for (const auto& layer : layers_) {
    acts.push_back(layer->forward(acts.back()));
  }
  return acts;
}

std::size_t NeuralNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += layer->parameter_count();
  }
  return n;
}

std::vector<double> NeuralNetwork::parameters() const {
  std::vector<double> out(parameter_count());
  std::size_t offset = 0;
  for (const auto& layer : layers_) {
    const std::size_t n = layer->parameter_count();
    layer->get_parameters(std::span<double>(out.data() + offset, n));
    offset += n;
  }
  return out;
}

void NeuralNetwork::set_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw std::invalid_argument("set_parameters: length mismatch");
  }
  std::size_t offset = 0;
  for (const auto& layer : layers_) {
    const std::size_t n = layer->parameter_count();
    layer->set_parameters(values.subspan(offset, n));
    offset += n;
  }
}

void NeuralNetwork::initialize(des::RandomStream& rng) {
  for (const auto& layer : layers_) {
    layer->init_parameters(rng);
  }
}

void NeuralNetwork::initialize(std::uint64_t seed) {
  des::RandomStream rng(seed, "init");
  initialize(rng);
}

}  // namespace edgesim::dl
