#pragma once

#include <cstddef>

#include "edgesim/dl/neural_network.hpp"

namespace edgesim::dl {

// Classic LeNet-5 flavor: Scaling -> Conv(6 kernels 5x5) -> AvgPool(2, s2) ->
// Conv(16 kernels 5x5) -> AvgPool(2, s2) -> Dense(120, tanh) ->
// Dense(84, tanh) -> Dense(classes, linear) -> Probabilistic. Input tensors
// are [channels, height, width]; the scaling stage defaults to identity
// statistics. Parameters are zero until initialize() is called. Throws
// std::invalid_argument naming the first stage the input is too small for.
NeuralNetwork build_lenet(std::size_t height, std::size_t width,
                          std::size_t channels, std::size_t classes);

}  // namespace edgesim::dl
