#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "edgesim/dl/tensor.hpp"

namespace edgesim::dl {

enum class LossIndex : std::uint8_t { MeanSquaredError, CrossEntropy };

std::string_view to_string(LossIndex index);
LossIndex loss_from_string(std::string_view s);

// Floor applied to predictions before log in cross-entropy; bounds the
// achievable loss at -log(1e-12) per component.
inline constexpr double kCrossEntropyClamp = 1e-12;

// MSE: mean over all elements of squared error.
// Cross-entropy: -sum target * log(max(predicted, clamp)); predictions must be
// probability vectors (components in [0,1], sum within 1e-6 of 1).
double loss(LossIndex index, const Tensor& predicted, const Tensor& target);

// Mean of per-sample losses over a batch (MSE: mean over all elements of all
// samples, which coincides with the mean of per-sample means at equal shapes).
double batch_loss(LossIndex index, std::span<const Tensor> predicted,
                  std::span<const Tensor> targets);

// d(batch loss)/d(predicted) for one sample of a batch of `batch_size`.
Tensor loss_gradient(LossIndex index, const Tensor& predicted,
                     const Tensor& target, std::size_t batch_size);

}  // namespace edgesim::dl
