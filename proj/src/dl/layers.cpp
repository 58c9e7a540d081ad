#include "edgesim/dl/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edgesim::dl {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Linear: return "linear";
    case Activation::Logistic: return "logistic";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
  }
  return "unknown";
}

Activation activation_from_string(std::string_view s) {
  if (s == "linear") return Activation::Linear;
  if (s == "logistic") return Activation::Logistic;
  if (s == "tanh") return Activation::Tanh;
  if (s == "relu") return Activation::Relu;
  throw std::invalid_argument("unknown activation: " + std::string(s));
}

std::string_view to_string(PoolMode m) {
  return m == PoolMode::Max ? "max" : "average";
}

namespace {

std::size_t flat_size(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Linear: return z;
    case Activation::Logistic: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Tanh: return std::tanh(z);
    case Activation::Relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

// Activation derivative expressed through the activation output.
double activate_grad(Activation a, double y) {
  switch (a) {
    case Activation::Linear: return 1.0;
    case Activation::Logistic: return y * (1.0 - y);
    case Activation::Tanh: return 1.0 - y * y;
    case Activation::Relu: return y > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

}  // namespace

// ---------------------------------------------------------------- Dense

DenseLayer::DenseLayer(std::size_t inputs, std::size_t outputs,
                       Activation activation)
    : inputs_(inputs),
      outputs_(outputs),
      activation_(activation),
      weights_(inputs * outputs, 0.0),
      bias_(outputs, 0.0) {
  if (inputs_ == 0 || outputs_ == 0) {
    throw std::invalid_argument("dense: inputs and outputs must be >= 1");
  }
}

std::vector<std::size_t> DenseLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (flat_size(input) != inputs_) {
    throw ShapeError("dense", "expected " + std::to_string(inputs_) +
                                  " inputs, got " + shape_to_string(input));
  }
  return {outputs_};
}

Tensor DenseLayer::forward(const Tensor& input) const {
  if (input.size() != inputs_) {
    throw ShapeError("dense", "expected " + std::to_string(inputs_) +
                                  " inputs, got " +
                                  shape_to_string(input.shape()));
  }
  Tensor out({outputs_});
  const double* x = input.data();
  for (std::size_t i = 0; i < outputs_; ++i) {
    double z = bias_[i];
    const double* row = weights_.data() + i * inputs_;
    for (std::size_t j = 0; j < inputs_; ++j) {
      z += row[j] * x[j];
    }
    out[i] = activate(activation_, z);
  }
  return out;
}

Tensor DenseLayer::backward(const Tensor& input, const Tensor& output,
                            const Tensor& grad_output,
                            std::span<double> param_grad) const {
  Tensor grad_in(input.shape());
  const double* x = input.data();
  double* gw = param_grad.data();              // outputs x inputs
  double* gb = param_grad.data() + weights_.size();
  for (std::size_t i = 0; i < outputs_; ++i) {
    const double dz = grad_output[i] * activate_grad(activation_, output[i]);
    const double* row = weights_.data() + i * inputs_;
    double* gw_row = gw + i * inputs_;
    for (std::size_t j = 0; j < inputs_; ++j) {
      gw_row[j] += dz * x[j];
      grad_in[j] += dz * row[j];
    }
    gb[i] += dz;
  }
  return grad_in;
}

void DenseLayer::get_parameters(std::span<double> out) const {
  std::copy(weights_.begin(), weights_.end(), out.begin());
  std::copy(bias_.begin(), bias_.end(), out.begin() + weights_.size());
}

void DenseLayer::set_parameters(std::span<const double> in) {
  std::copy(in.begin(), in.begin() + weights_.size(), weights_.begin());
  std::copy(in.begin() + weights_.size(), in.end(), bias_.begin());
}

void DenseLayer::init_parameters(des::RandomStream& rng) {
  // Glorot-style uniform, biases zero.
  const double limit = std::sqrt(6.0 / static_cast<double>(inputs_ + outputs_));
  for (double& w : weights_) {
    w = (2.0 * rng.next_double() - 1.0) * limit;
  }
  std::fill(bias_.begin(), bias_.end(), 0.0);
}

// ---------------------------------------------------------------- Scaling

ScalingLayer::ScalingLayer(std::vector<double> mean, std::vector<double> stddev)
    : mean_(std::move(mean)), stddev_(std::move(stddev)) {
  if (mean_.empty() || mean_.size() != stddev_.size()) {
    throw std::invalid_argument("scaling: mean/std size mismatch");
  }
  for (double s : stddev_) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("scaling: std must be > 0 per feature");
    }
  }
}

std::vector<std::size_t> ScalingLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (flat_size(input) != mean_.size()) {
    throw ShapeError("scaling", "expected " + std::to_string(mean_.size()) +
                                    " features, got " + shape_to_string(input));
  }
  return input;
}

Tensor ScalingLayer::forward(const Tensor& input) const {
  if (input.size() != mean_.size()) {
    throw ShapeError("scaling", "feature count mismatch");
  }
  Tensor out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = (input[i] - mean_[i]) / stddev_[i];
  }
  return out;
}

Tensor ScalingLayer::backward(const Tensor& input, const Tensor&,
                              const Tensor& grad_output,
                              std::span<double>) const {
  Tensor grad_in(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    grad_in[i] = grad_output[i] / stddev_[i];
  }
  return grad_in;
}

// ---------------------------------------------------------------- Unscaling

UnscalingLayer::UnscalingLayer(std::vector<double> mean,
                               std::vector<double> stddev)
    : mean_(std::move(mean)), stddev_(std::move(stddev)) {
  if (mean_.empty() || mean_.size() != stddev_.size()) {
    throw std::invalid_argument("unscaling: mean/std size mismatch");
  }
  for (double s : stddev_) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("unscaling: std must be > 0 per feature");
    }
  }
}

std::vector<std::size_t> UnscalingLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (flat_size(input) != mean_.size()) {
    throw ShapeError("unscaling", "expected " + std::to_string(mean_.size()) +
                                      " features, got " +
                                      shape_to_string(input));
  }
  return input;
}

Tensor UnscalingLayer::forward(const Tensor& input) const {
  if (input.size() != mean_.size()) {
    throw ShapeError("unscaling", "feature count mismatch");
  }
  Tensor out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = input[i] * stddev_[i] + mean_[i];
  }
  return out;
}

Tensor UnscalingLayer::backward(const Tensor& input, const Tensor&,
                                const Tensor& grad_output,
                                std::span<double>) const {
  Tensor grad_in(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    grad_in[i] = grad_output[i] * stddev_[i];
  }
  return grad_in;
}

// ---------------------------------------------------------------- Bounding

BoundingLayer::BoundingLayer(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("bounding: lower/upper size mismatch");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw std::invalid_argument("bounding: lower must be <= upper");
    }
  }
}

std::vector<std::size_t> BoundingLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (flat_size(input) != lower_.size()) {
    throw ShapeError("bounding", "expected " + std::to_string(lower_.size()) +
                                     " features, got " + shape_to_string(input));
  }
  return input;
}

Tensor BoundingLayer::forward(const Tensor& input) const {
  if (input.size() != lower_.size()) {
    throw ShapeError("bounding", "feature count mismatch");
  }
  Tensor out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = std::clamp(input[i], lower_[i], upper_[i]);
  }
  return out;
}

Tensor BoundingLayer::backward(const Tensor& input, const Tensor&,
                               const Tensor& grad_output,
                               std::span<double>) const {
  Tensor grad_in(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    const bool clamped = input[i] < lower_[i] || input[i] > upper_[i];
    grad_in[i] = clamped ? 0.0 : grad_output[i];
  }
  return grad_in;
}

// ---------------------------------------------------------------- Probabilistic

std::vector<std::size_t> ProbabilisticLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  return {flat_size(input)};
}

Tensor ProbabilisticLayer::forward(const Tensor& input) const {
  Tensor out({input.size()});
  double max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < input.size(); ++i) {
    max = std::max(max, input[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = std::exp(input[i] - max);
    sum += out[i];
  }
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] /= sum;
  }
  return out;
}

Tensor ProbabilisticLayer::backward(const Tensor& input, const Tensor& output,
                                    const Tensor& grad_output,
                                    std::span<double>) const {
  double dot = 0.0;
  for (std::size_t i = 0; i < output.size(); ++i) {
    dot += grad_output[i] * output[i];
  }
  Tensor grad_in(input.shape());
  for (std::size_t i = 0; i < output.size(); ++i) {
    grad_in[i] = output[i] * (grad_output[i] - dot);
  }
  return grad_in;
}

// ---------------------------------------------------------------- Conv2d

Conv2dLayer::Conv2dLayer(std::size_t in_channels, std::size_t out_channels,
                         std::size_t kernel_h, std::size_t kernel_w,
                         std::size_t stride)
    : in_channels_(in_channels),
      out_channels_(out_channels),
      kernel_h_(kernel_h),
      kernel_w_(kernel_w),
      stride_(stride),
      kernels_(in_channels * out_channels * kernel_h * kernel_w, 0.0),
      bias_(out_channels, 0.0) {
  if (in_channels_ == 0 || out_channels_ == 0 || kernel_h_ == 0 ||
      kernel_w_ == 0 || stride_ == 0) {
    throw std::invalid_argument("conv2d: all dimensions must be >= 1");
  }
}

std::vector<std::size_t> Conv2dLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (input.size() != 3 || input[0] != in_channels_) {
    throw ShapeError("conv2d", "expected [" + std::to_string(in_channels_) +
                                   " x h x w] input, got " +
                                   shape_to_string(input));
  }
  const std::size_t h = input[1];
  const std::size_t w = input[2];
  if (h < kernel_h_ || w < kernel_w_) {
    throw ShapeError("conv2d", "input " + shape_to_string(input) +
                                   " smaller than kernel " +
                                   std::to_string(kernel_h_) + "x" +
                                   std::to_string(kernel_w_));
  }
  return {out_channels_, (h - kernel_h_) / stride_ + 1,
          (w - kernel_w_) / stride_ + 1};
}

Tensor Conv2dLayer::forward(const Tensor& input) const {
  Tensor out(output_shape(input.shape()));
  const std::size_t oh = out.dim(1);
  const std::size_t ow = out.dim(2);
  for (std::size_t oc = 0; oc < out_channels_; ++oc) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        double acc = bias_[oc];
        for (std::size_t ic = 0; ic < in_channels_; ++ic) {
          for (std::size_t ky = 0; ky < kernel_h_; ++ky) {
            for (std::size_t kx = 0; kx < kernel_w_; ++kx) {
              acc += input(ic, y * stride_ + ky, x * stride_ + kx) *
                     kernel_at(oc, ic, ky, kx);
            }
          }
        }
        out(oc, y, x) = acc;
      }
    }
  }
  return out;
}

Tensor Conv2dLayer::backward(const Tensor& input, const Tensor& output,
                             const Tensor& grad_output,
                             std::span<double> param_grad) const {
  Tensor grad_in(input.shape());
  double* gk = param_grad.data();
  double* gb = param_grad.data() + kernels_.size();
  const std::size_t oh = output.dim(1);
  const std::size_t ow = output.dim(2);
  for (std::size_t oc = 0; oc < out_channels_; ++oc) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const double g = grad_output(oc, y, x);
        gb[oc] += g;
        for (std::size_t ic = 0; ic < in_channels_; ++ic) {
          for (std::size_t ky = 0; ky < kernel_h_; ++ky) {
            for (std::size_t kx = 0; kx < kernel_w_; ++kx) {
              const std::size_t iy = y * stride_ + ky;
              const std::size_t ix = x * stride_ + kx;
              gk[((oc * in_channels_ + ic) * kernel_h_ + ky) * kernel_w_ + kx] +=
                  g * input(ic, iy, ix);
              grad_in(ic, iy, ix) += g * kernel_at(oc, ic, ky, kx);
            }
          }
        }
      }
    }
  }
  return grad_in;
}

void Conv2dLayer::get_parameters(std::span<double> out) const {
  std::copy(kernels_.begin(), kernels_.end(), out.begin());
  std::copy(bias_.begin(), bias_.end(), out.begin() + kernels_.size());
}

void Conv2dLayer::set_parameters(std::span<const double> in) {
  std::copy(in.begin(), in.begin() + kernels_.size(), kernels_.begin());
  std::copy(in.begin() + kernels_.size(), in.end(), bias_.begin());
}

void Conv2dLayer::init_parameters(des::RandomStream& rng) {
  const double fan_in = static_cast<double>(in_channels_ * kernel_h_ * kernel_w_);
  const double fan_out =
      static_cast<double>(out_channels_ * kernel_h_ * kernel_w_);
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& k : kernels_) {
    k = (2.0 * rng.next_double() - 1.0) * limit;
  }
  std::fill(bias_.begin(), bias_.end(), 0.0);
}

// ---------------------------------------------------------------- Pooling

PoolingLayer::PoolingLayer(PoolMode mode, std::size_t window, std::size_t stride)
    : mode_(mode), window_(window), stride_(stride) {
  if (window_ == 0 || stride_ == 0) {
    throw std::invalid_argument("pooling: window and stride must be >= 1");
  }
}

std::vector<std::size_t> PoolingLayer::output_shape(
    const std::vector<std::size_t>& input) const {
  if (input.size() != 3) {
    throw ShapeError("pooling", "expected [c x h x w] input, got " +
                                    shape_to_string(input));
  }
  if (input[1] < window_ || input[2] < window_) {
    throw ShapeError("pooling", "input " + shape_to_string(input) +
                                    " smaller than window " +
                                    std::to_string(window_));
  }
  return {input[0], (input[1] - window_) / stride_ + 1,
          (input[2] - window_) / stride_ + 1};
}

Tensor PoolingLayer::forward(const Tensor& input) const {
  Tensor out(output_shape(input.shape()));
  const std::size_t channels = out.dim(0);
  const std::size_t oh = out.dim(1);
  const std::size_t ow = out.dim(2);
  const double inv_area = 1.0 / static_cast<double>(window_ * window_);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        if (mode_ == PoolMode::Max) {
          double best = -std::numeric_limits<double>::infinity();
          for (std::size_t ky = 0; ky < window_; ++ky) {
            for (std::size_t kx = 0; kx < window_; ++kx) {
              best = std::max(best,
                              input(c, y * stride_ + ky, x * stride_ + kx));
            }
          }
          out(c, y, x) = best;
        } else {
          double sum = 0.0;
          for (std::size_t ky = 0; ky < window_; ++ky) {
            for (std::size_t kx = 0; kx < window_; ++kx) {
              sum += input(c, y * stride_ + ky, x * stride_ + kx);
            }
          }
          out(c, y, x) = sum * inv_area;
        }
      }
    }
  }
  return out;
}

Tensor PoolingLayer::backward(const Tensor& input, const Tensor& output,
                              const Tensor& grad_output,
                              std::span<double>) const {
  Tensor grad_in(input.shape());
  const std::size_t channels = output.dim(0);
  const std::size_t oh = output.dim(1);
  const std::size_t ow = output.dim(2);
  const double inv_area = 1.0 / static_cast<double>(window_ * window_);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const double g = grad_output(c, y, x);
        if (mode_ == PoolMode::Max) {
          // Route to the first max in row-major order.
          std::size_t best_y = y * stride_;
          std::size_t best_x = x * stride_;
          double best = input(c, best_y, best_x);
          for (std::size_t ky = 0; ky < window_; ++ky) {
            for (std::size_t kx = 0; kx < window_; ++kx) {
              const double v = input(c, y * stride_ + ky, x * stride_ + kx);
              if (v > best) {
                best = v;
                best_y = y * stride_ + ky;
                best_x = x * stride_ + kx;
              }
            }
          }
          grad_in(c, best_y, best_x) += g;
        } else {
          for (std::size_t ky = 0; ky < window_; ++ky) {
            for (std::size_t kx = 0; kx < window_; ++kx) {
              grad_in(c, y * stride_ + ky, x * stride_ + kx) += g * inv_area;
            }
          }
        }
      }
    }
  }
  return grad_in;
}

}  // namespace edgesim::dl
