#include "edgesim/dl/lenet.hpp"

#include <stdexcept>
#include <string>

namespace edgesim::dl {

namespace {

constexpr std::size_t kConvKernel = 5;
constexpr std::size_t kPoolWindow = 2;
constexpr std::size_t kPoolStride = 2;

std::size_t conv_out(std::size_t in, const char* stage) {
  if (in < kConvKernel) {
    throw std::invalid_argument(std::string("build_lenet: input too small at ") +
                                stage + " (needs >= 5, has " +
                                std::to_string(in) + ")");
  }
  return in - kConvKernel + 1;
}

std::size_t pool_out(std::size_t in, const char* stage) {
  if (in < kPoolWindow) {
    throw std::invalid_argument(std::string("build_lenet: input too small at ") +
                                stage + " (needs >= 2, has " +
                                std::to_string(in) + ")");
  }
  return (in - kPoolWindow) / kPoolStride + 1;
}

}  // namespace

NeuralNetwork build_lenet(std::size_t height, std::size_t width,
                          std::size_t channels, std::size_t classes) {
  if (height == 0 || width == 0 || channels == 0 || classes == 0) {
    throw std::invalid_argument("build_lenet: all dimensions must be >= 1");
  }
  std::size_t h = conv_out(height, "conv1");
  std::size_t w = conv_out(width, "conv1");
  h = pool_out(h, "pool1");
  w = pool_out(w, "pool1");
  h = conv_out(h, "conv2");
  w = conv_out(w, "conv2");
  h = pool_out(h, "pool2");
  w = pool_out(w, "pool2");

  const std::size_t features = channels * height * width;
  const std::size_t flat = 16 * h * w;

  NetworkBuilder builder({channels, height, width});
  builder.add<ScalingLayer>(std::vector<double>(features, 0.0),
                            std::vector<double>(features, 1.0));
  builder.add<Conv2dLayer>(channels, 6, kConvKernel, kConvKernel, 1);
  builder.add<PoolingLayer>(PoolMode::Average, kPoolWindow, kPoolStride);
  builder.add<Conv2dLayer>(6, 16, kConvKernel, kConvKernel, 1);
  builder.add<PoolingLayer>(PoolMode::Average, kPoolWindow, kPoolStride);
  builder.add<DenseLayer>(flat, 120, Activation::Tanh);
  builder.add<DenseLayer>(120, 84, Activation::Tanh);
  builder.add<DenseLayer>(84, classes, Activation::Linear);
  builder.add<ProbabilisticLayer>();
  return builder.build();
}

}  // namespace edgesim::dl
