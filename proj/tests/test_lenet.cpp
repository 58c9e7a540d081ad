#include <string>

#include <doctest.h>

#include "edgesim/dl/lenet.hpp"
#include "edgesim/des/random.hpp"

using namespace edgesim;
using namespace edgesim::dl;

namespace {

Tensor random_image(std::size_t h, std::size_t w, std::size_t c,
                    std::uint64_t seed) {
  des::RandomStream rng(seed, "image");
  Tensor t({c, h, w});
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = rng.normal(0.0, 1.0);
  }
  return t;
}

}  // namespace

TEST_CASE("28x28x1 LeNet: 10-way probability output, 28->24->12->8->4 stages") {
  NeuralNetwork net = build_lenet(28, 28, 1, 10);
  net.initialize(11);
  // Dense(120) sees 16 * 4 * 4 = 256 features.
  CHECK(net.stage_shape(5) == std::vector<std::size_t>{16, 4, 4});
  Tensor out = net.forward(random_image(28, 28, 1, 1));
  REQUIRE(out.shape() == std::vector<std::size_t>{10});
  double sum = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i] > 0.0);
    CHECK(out[i] < 1.0);
    sum += out[i];
  }
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("32x32x1 LeNet flattens 16*5*5 = 400 features into Dense(120)") {
  NeuralNetwork net = build_lenet(32, 32, 1, 10);
  CHECK(net.stage_shape(5) == std::vector<std::size_t>{16, 5, 5});
  const auto& dense = dynamic_cast<const DenseLayer&>(net.layer(5));
  CHECK(dense.inputs() == 400);
  CHECK(dense.outputs() == 120);
}

TEST_CASE("inputs below the structural minimum are rejected by stage") {
  CHECK_THROWS_AS(build_lenet(8, 8, 1, 10), std::invalid_argument);
  try {
    build_lenet(8, 8, 1, 10);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("conv2") != std::string::npos);
  }
  try {
    build_lenet(4, 4, 1, 10);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("conv1") != std::string::npos);
  }
  CHECK_THROWS_AS(build_lenet(28, 28, 1, 0), std::invalid_argument);
}

TEST_CASE("multichannel input is supported") {
  NeuralNetwork net = build_lenet(20, 20, 3, 4);
  net.initialize(2);
  Tensor out = net.forward(random_image(20, 20, 3, 9));
  CHECK(out.shape() == std::vector<std::size_t>{4});
}
