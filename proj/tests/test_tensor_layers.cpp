#include <doctest.h>

#include "edgesim/dl/layers.hpp"
#include "edgesim/dl/neural_network.hpp"

using namespace edgesim;
using namespace edgesim::dl;

TEST_CASE("tensor shape/data validation") {
  Tensor t({2, 3});
  CHECK(t.size() == 6);
  CHECK(t.rank() == 2);
  t(1, 2) = 7.0;
  CHECK(t[5] == 7.0);
  CHECK_THROWS_AS(Tensor({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(Tensor({}), std::invalid_argument);
}

TEST_CASE("dense identity passes input through") {
  DenseLayer layer(3, 3, Activation::Linear);
  layer.weights() = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  Tensor in = Tensor::from_vector({1.5, -2.0, 0.25});
  Tensor out = layer.forward(in);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(out[i] == in[i]);
  }
}

TEST_CASE("dense rejects mismatched inputs naming the layer") {
  DenseLayer layer(3, 2, Activation::Linear);
  try {
    layer.forward(Tensor::from_vector({1.0, 2.0}));
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(e.layer() == "dense");
  }
}

TEST_CASE("probabilistic is softmax") {
  ProbabilisticLayer softmax;
  SUBCASE("symmetric input splits evenly") {
    Tensor out = softmax.forward(Tensor::from_vector({0.0, 0.0}));
    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(0.5));
  }
  SUBCASE("any output sums to one") {
    Tensor out = softmax.forward(Tensor::from_vector({3.0, -1.0, 0.5, 10.0}));
    double sum = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i] > 0.0);
      CHECK(out[i] < 1.0);
      sum += out[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("conv2d sliding sum matches the hand computation") {
  Conv2dLayer conv(1, 1, 2, 2, 1);
  conv.kernels() = {1, 1, 1, 1};
  Tensor in({1, 3, 3}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  Tensor out = conv.forward(in);
  REQUIRE(out.shape() == std::vector<std::size_t>{1, 2, 2});
  CHECK(out(0, 0, 0) == 12);
  CHECK(out(0, 0, 1) == 16);
  CHECK(out(0, 1, 0) == 24);
  CHECK(out(0, 1, 1) == 28);
}

TEST_CASE("conv2d output dims must stay positive") {
  Conv2dLayer conv(1, 1, 5, 5, 1);
  CHECK_THROWS_AS(conv.output_shape({1, 3, 3}), ShapeError);
  CHECK(conv.output_shape({1, 5, 5}) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("pooling forward") {
  Tensor in({1, 2, 2}, {1, 4, 3, 2});
  SUBCASE("max") {
    PoolingLayer pool(PoolMode::Max, 2, 2);
    Tensor out = pool.forward(in);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == 4);
  }
  SUBCASE("average") {
    PoolingLayer pool(PoolMode::Average, 2, 2);
    Tensor out = pool.forward(in);
    CHECK(out[0] == doctest::Approx(2.5));
  }
}

TEST_CASE("scaling then unscaling with the same stats is the identity") {
  std::vector<double> mean{0.5, -1.0, 2.0};
  std::vector<double> stddev{2.0, 0.25, 1.5};
  NetworkBuilder b({3});
  b.add<ScalingLayer>(mean, stddev);
  b.add<UnscalingLayer>(mean, stddev);
  NeuralNetwork net = b.build();
  Tensor in = Tensor::from_vector({3.0, -0.5, 7.25});
  Tensor out = net.forward(in);
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(std::abs(out[i] - in[i]) <= 1e-12);
  }
}

TEST_CASE("scaling validates std > 0") {
  CHECK_THROWS_AS(ScalingLayer({0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(UnscalingLayer({0.0}, {-1.0}), std::invalid_argument);
}

TEST_CASE("bounding clamps and validates bounds") {
  BoundingLayer layer({0.0, 0.0}, {1.0, 2.0});
  Tensor out = layer.forward(Tensor::from_vector({-0.5, 1.5}));
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 1.5);
  CHECK_THROWS_AS(BoundingLayer({1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("network construction checks layer shape compatibility") {
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(4, 3, Activation::Tanh));
  layers.push_back(std::make_unique<DenseLayer>(5, 2, Activation::Linear));
  CHECK_THROWS_AS(NeuralNetwork({4}, std::move(layers)), ShapeError);
}

TEST_CASE("forward validates the input shape against the network") {
  NetworkBuilder b({4});
  b.add<DenseLayer>(4, 2, Activation::Linear);
  NeuralNetwork net = b.build();
  CHECK_THROWS_AS(net.forward(Tensor::from_vector({1.0, 2.0})), ShapeError);
}

TEST_CASE("parameters round-trip through the flat vector") {
  NetworkBuilder b({2});
  b.add<DenseLayer>(2, 3, Activation::Tanh);
  b.add<DenseLayer>(3, 1, Activation::Linear);
  NeuralNetwork net = b.build();
  net.initialize(7);
  auto params = net.parameters();
  CHECK(params.size() == net.parameter_count());
  CHECK(params.size() == (2 * 3 + 3) + (3 * 1 + 1));
  std::vector<double> doubled = params;
  for (auto& p : doubled) p *= 2.0;
  net.set_parameters(doubled);
  CHECK(net.parameters() == doubled);
}

TEST_CASE("initialization is reproducible and seed-dependent") {
  auto build = [] {
    NetworkBuilder b({3});
    b.add<DenseLayer>(3, 4, Activation::Tanh);
    b.add<DenseLayer>(4, 2, Activation::Linear);
    return b.build();
  };
  NeuralNetwork a = build();
  NeuralNetwork b2 = build();
  NeuralNetwork c = build();
  a.initialize(7);
  b2.initialize(7);
  c.initialize(8);
  CHECK(a.parameters() == b2.parameters());
  CHECK(a.parameters() != c.parameters());
}
