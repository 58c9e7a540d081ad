#include "edgesim/dl/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace edgesim::dl {

std::string_view to_string(LossIndex index) {
  return index == LossIndex::MeanSquaredError ? "mse" : "cross_entropy";
}

LossIndex loss_from_string(std::string_view s) {
  if (s == "mse") return LossIndex::MeanSquaredError;
  if (s == "cross_entropy") return LossIndex::CrossEntropy;
  throw std::invalid_argument("unknown loss: " + std::string(s));
}

namespace {

void check_shapes(const Tensor& predicted, const Tensor& target) {
  if (!predicted.same_shape(target)) {
    throw std::invalid_argument("loss: predicted/target shape mismatch: " +
                                shape_to_string(predicted.shape()) + " vs " +
                                shape_to_string(target.shape()));
  }
}

void check_probability_vector(const Tensor& predicted) {
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] < 0.0) {
      throw std::invalid_argument(
          "cross_entropy: predictions must be non-negative");
    }
    sum += predicted[i];
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument(
        "cross_entropy: predictions must sum to 1 within 1e-6");
  }
}

double mse(const Tensor& predicted, const Tensor& target) {
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(predicted.size());
}

double cross_entropy(const Tensor& predicted, const Tensor& target) {
  check_probability_vector(predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    acc -= target[i] * std::log(std::max(predicted[i], kCrossEntropyClamp));
  }
  return acc;
}

}  // namespace

double loss(LossIndex index, const Tensor& predicted, const Tensor& target) {
  check_shapes(predicted, target);
  return index == LossIndex::MeanSquaredError ? mse(predicted, target)
                                              : cross_entropy(predicted, target);
}

double batch_loss(LossIndex index, std::span<const Tensor> predicted,
                  std::span<const Tensor> targets) {
  if (predicted.size() != targets.size() || predicted.empty()) {
    throw std::invalid_argument("batch_loss: batch size mismatch or empty");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    acc += loss(index, predicted[i], targets[i]);
  }
  return acc / static_cast<double>(predicted.size());
}

Tensor loss_gradient(LossIndex index, const Tensor& predicted,
                     const Tensor& target, std::size_t batch_size) {
  check_shapes(predicted, target);
  if (batch_size == 0) {
    throw std::invalid_argument("loss_gradient: batch_size must be >= 1");
  }
  Tensor grad(predicted.shape());
  const double inv_batch = 1.0 / static_cast<double>(batch_size);
  if (index == LossIndex::MeanSquaredError) {
    const double scale = 2.0 * inv_batch / static_cast<double>(predicted.size());
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      grad[i] = scale * (predicted[i] - target[i]);
    }
  } else {
    check_probability_vector(predicted);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      // Below the clamp the loss is locally constant in the prediction.
      grad[i] = predicted[i] > kCrossEntropyClamp
                    ? -inv_batch * target[i] / predicted[i]
                    : 0.0;
    }
  }
  return grad;
}

}  // namespace edgesim::dl
