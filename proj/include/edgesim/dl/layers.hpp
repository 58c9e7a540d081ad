#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edgesim/des/random.hpp"
#include "edgesim/dl/tensor.hpp"

namespace edgesim::dl {

// Shape mismatch naming the offending layer.
class ShapeError : public std::invalid_argument {
 public:
  ShapeError(std::string_view layer, const std::string& what)
      : std::invalid_argument(std::string(layer) + ": " + what),
        layer_(layer) {}

  const std::string& layer() const { return layer_; }

 private:
  std::string layer_;
};

enum class Activation : std::uint8_t { Linear, Logistic, Tanh, Relu };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view s);

// One stage of a network. Layers are deterministic maps with optional
// trainable parameters exposed as a flat row-major vector; backward consumes
// the layer's own input/output from the forward pass and accumulates
// parameter gradients into `param_grad`.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string_view kind() const = 0;

  // Validates the input shape and returns the output shape.
  virtual std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const = 0;

  virtual Tensor forward(const Tensor& input) const = 0;

  // Returns the gradient with respect to the input.
  virtual Tensor backward(const Tensor& input, const Tensor& output,
                          const Tensor& grad_output,
                          std::span<double> param_grad) const = 0;

  virtual std::size_t parameter_count() const { return 0; }
  virtual void get_parameters(std::span<double>) const {}
  virtual void set_parameters(std::span<const double>) {}
  virtual void init_parameters(des::RandomStream&) {}

  virtual std::unique_ptr<Layer> clone() const = 0;
};

// Fully connected y = act(W x + b); accepts any input whose element count
// matches, flattening row-major.
class DenseLayer : public Layer {
 public:
  DenseLayer(std::size_t inputs, std::size_t outputs, Activation activation);

  std::string_view kind() const override { return "dense"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;

  std::size_t parameter_count() const override {
    return weights_.size() + bias_.size();
  }
  void get_parameters(std::span<double> out) const override;
  void set_parameters(std::span<const double> in) override;
  void init_parameters(des::RandomStream& rng) override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<DenseLayer>(*this);
  }

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }
  Activation activation() const { return activation_; }
  std::vector<double>& weights() { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  std::size_t inputs_;
  std::size_t outputs_;
  Activation activation_;
  std::vector<double> weights_;  // outputs x inputs, row-major
  std::vector<double> bias_;     // outputs
};

// Elementwise (x - mean) / std over the flattened input; shape-preserving.
class ScalingLayer : public Layer {
 public:
  ScalingLayer(std::vector<double> mean, std::vector<double> stddev);

  std::string_view kind() const override { return "scaling"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<ScalingLayer>(*this);
  }

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

// Elementwise x * std + mean; inverse of ScalingLayer with the same stats.
class UnscalingLayer : public Layer {
 public:
  UnscalingLayer(std::vector<double> mean, std::vector<double> stddev);

  std::string_view kind() const override { return "unscaling"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<UnscalingLayer>(*this);
  }

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

// Elementwise clamp to [lower, upper]; gradient 1 inside the bounds, 0 at
// clamped points.
class BoundingLayer : public Layer {
 public:
  BoundingLayer(std::vector<double> lower, std::vector<double> upper);

  std::string_view kind() const override { return "bounding"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<BoundingLayer>(*this);
  }

  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Softmax over the flattened input; output is a probability vector.
class ProbabilisticLayer : public Layer {
 public:
  ProbabilisticLayer() = default;

  std::string_view kind() const override { return "probabilistic"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<ProbabilisticLayer>(*this);
  }
};

// 2-D convolution, valid padding, square stride. Input and output tensors are
// [channels, height, width].
class Conv2dLayer : public Layer {
 public:
  Conv2dLayer(std::size_t in_channels, std::size_t out_channels,
              std::size_t kernel_h, std::size_t kernel_w, std::size_t stride);

  std::string_view kind() const override { return "conv2d"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;

  std::size_t parameter_count() const override {
    return kernels_.size() + bias_.size();
  }
  void get_parameters(std::span<double> out) const override;
  void set_parameters(std::span<const double> in) override;
  void init_parameters(des::RandomStream& rng) override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<Conv2dLayer>(*this);
  }

  std::size_t in_channels() const { return in_channels_; }
  std::size_t out_channels() const { return out_channels_; }
  std::size_t kernel_h() const { return kernel_h_; }
  std::size_t kernel_w() const { return kernel_w_; }
  std::size_t stride() const { return stride_; }
  std::vector<double>& kernels() { return kernels_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& kernels() const { return kernels_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  double& kernel_at(std::size_t oc, std::size_t ic, std::size_t ky,
                    std::size_t kx) {
    return kernels_[((oc * in_channels_ + ic) * kernel_h_ + ky) * kernel_w_ + kx];
  }
  double kernel_at(std::size_t oc, std::size_t ic, std::size_t ky,
                   std::size_t kx) const {
    return kernels_[((oc * in_channels_ + ic) * kernel_h_ + ky) * kernel_w_ + kx];
  }

  std::size_t in_channels_;
  std::size_t out_channels_;
  std::size_t kernel_h_;
  std::size_t kernel_w_;
  std::size_t stride_;
  std::vector<double> kernels_;  // out x in x kh x kw
  std::vector<double> bias_;     // out
};

enum class PoolMode : std::uint8_t { Max, Average };

std::string_view to_string(PoolMode m);

// Per-channel max/average pooling over square windows; max-pool gradients
// route to the argmax, first index in row-major order on ties.
class PoolingLayer : public Layer {
 public:
  PoolingLayer(PoolMode mode, std::size_t window, std::size_t stride);

  std::string_view kind() const override { return "pooling"; }
  std::vector<std::size_t> output_shape(
      const std::vector<std::size_t>& input) const override;
  Tensor forward(const Tensor& input) const override;
  Tensor backward(const Tensor& input, const Tensor& output,
                  const Tensor& grad_output,
                  std::span<double> param_grad) const override;
  std::unique_ptr<Layer> clone() const override {
    return std::make_unique<PoolingLayer>(*this);
  }

  PoolMode mode() const { return mode_; }
  std::size_t window() const { return window_; }
  std::size_t stride() const { return stride_; }

 private:
  PoolMode mode_;
  std::size_t window_;
  std::size_t stride_;
};

}  // namespace edgesim::dl
