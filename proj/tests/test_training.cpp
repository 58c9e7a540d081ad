#include <doctest.h>

#include "edgesim/dl/serialization.hpp"
#include "edgesim/dl/testing.hpp"
#include "edgesim/dl/training.hpp"

using namespace edgesim;
using namespace edgesim::dl;

namespace {

DataSet xor_dataset(Split split = Split::Train) {
  DataSet ds = DataSet::with_layout(2, 1);
  const double rows[4][3] = {
      {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  for (const auto& row : rows) {
    ds.add_row(std::span<const double>(row, 3), split);
  }
  return ds;
}

NeuralNetwork xor_net(std::uint64_t seed) {
  NetworkBuilder b({2});
  b.add<DenseLayer>(2, 8, Activation::Tanh);
  b.add<DenseLayer>(8, 1, Activation::Logistic);
  NeuralNetwork net = b.build();
  net.initialize(seed);
  return net;
}

}  // namespace

TEST_CASE("sgd_step applies p -= lr * g") {
  std::vector<double> params{1.0};
  std::vector<double> grads{2.0};
  sgd_step(std::span<double>(params), std::span<const double>(grads), 0.1);
  CHECK(params[0] == doctest::Approx(0.8));

  SUBCASE("learning rate zero leaves parameters unchanged") {
    std::vector<double> p{3.0, -1.0};
    std::vector<double> g{100.0, 5.0};
    sgd_step(std::span<double>(p), std::span<const double>(g), 0.0);
    CHECK(p == std::vector<double>{3.0, -1.0});
  }
}

TEST_CASE("two half-rate steps solve the quadratic (p-3)^2 exactly") {
  // Gradient of (p-3)^2 is 2(p-3): 0 -> 3 -> 3.
  double p = 0.0;
  for (int step = 0; step < 2; ++step) {
    std::vector<double> params{p};
    std::vector<double> grads{2.0 * (p - 3.0)};
    sgd_step(std::span<double>(params), std::span<const double>(grads), 0.5);
    p = params[0];
    CHECK(p == 3.0);
  }
}

TEST_CASE("a trivially large loss goal stops after one epoch") {
  DataSet ds = xor_dataset();
  NeuralNetwork net = xor_net(1);
  TrainingStrategy strategy;
  strategy.loss = LossIndex::MeanSquaredError;
  strategy.optimizer = {0.1, 4};
  strategy.max_epochs = 100;
  strategy.loss_goal = 1e9;
  TrainingReport report = train(net, ds, strategy);
  CHECK(report.epochs_run() == 1);
  CHECK(report.stop_reason == StopReason::LossGoalReached);
}

TEST_CASE("an unreachable goal runs to max_epochs") {
  DataSet ds = xor_dataset();
  NeuralNetwork net = xor_net(1);
  TrainingStrategy strategy;
  strategy.optimizer = {0.1, 4};
  strategy.max_epochs = 3;
  strategy.loss_goal = -1.0;
  TrainingReport report = train(net, ds, strategy);
  CHECK(report.epochs_run() == 3);
  CHECK(report.stop_reason == StopReason::MaxEpochs);
}

TEST_CASE("training requires TRAIN rows and matching dimensions") {
  TrainingStrategy strategy;
  SUBCASE("no TRAIN rows") {
    DataSet ds = xor_dataset(Split::Test);
    NeuralNetwork net = xor_net(1);
    CHECK_THROWS_AS(train(net, ds, strategy), std::invalid_argument);
  }
  SUBCASE("dimension mismatch") {
    DataSet ds = xor_dataset();
    NetworkBuilder b({3});
    b.add<DenseLayer>(3, 1, Activation::Linear);
    NeuralNetwork net = b.build();
    CHECK_THROWS_AS(train(net, ds, strategy), std::invalid_argument);
  }
  SUBCASE("invalid strategy") {
    TrainingStrategy bad;
    bad.optimizer.learning_rate = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = TrainingStrategy{};
    bad.max_epochs = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = TrainingStrategy{};
    bad.optimizer.batch_size = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}

TEST_CASE("XOR training reaches the pinned regression point") {
  DataSet ds = xor_dataset();
  NeuralNetwork net = xor_net(7);
  TrainingStrategy strategy;
  strategy.loss = LossIndex::MeanSquaredError;
  strategy.optimizer = {0.5, 4};
  strategy.max_epochs = 5000;
  strategy.loss_goal = 0.05;
  strategy.seed = 7;
  TrainingReport report = train(net, ds, strategy);
  MESSAGE("xor epochs_run=", report.epochs_run(),
          " final=", report.final_loss(),
          " digest=", report.final_parameters_digest);
  CHECK(report.stop_reason == StopReason::LossGoalReached);
  CHECK(report.final_loss() < 0.05);
  CHECK(report.epochs_run() <= 5000);
  // Losses never exceed the goal after the stop point by construction.
  for (std::size_t i = 0; i + 1 < report.epoch_losses.size(); ++i) {
    CHECK(report.epoch_losses[i] > strategy.loss_goal);
  }
}

TEST_CASE("training is deterministic given (init seed, strategy seed, data)") {
  auto run = [] {
    DataSet ds = xor_dataset();
    NeuralNetwork net = xor_net(7);
    TrainingStrategy strategy;
    strategy.optimizer = {0.5, 4};
    strategy.max_epochs = 50;
    strategy.loss_goal = -1.0;
    strategy.seed = 7;
    return train(net, ds, strategy);
  };
  TrainingReport a = run();
  TrainingReport b = run();
  CHECK(a.epoch_losses == b.epoch_losses);
  CHECK(a.final_parameters_digest == b.final_parameters_digest);
}

TEST_CASE("evaluate reports zero loss and full accuracy for a perfect net") {
  // Identity-ish classifier: logits copy the input one-hot.
  DataSet ds = DataSet::with_layout(2, 2);
  const double rows[4][4] = {
      {5, 0, 1, 0}, {0, 5, 0, 1}, {5, 0, 1, 0}, {0, 5, 0, 1}};
  for (const auto& row : rows) {
    ds.add_row(std::span<const double>(row, 4), Split::Test);
  }
  NetworkBuilder b({2});
  b.add<DenseLayer>(2, 2, Activation::Linear);
  b.add<ProbabilisticLayer>();
  NeuralNetwork net = b.build();
  net.layer(0).set_parameters(std::vector<double>{1, 0, 0, 1, 0, 0});
  TestingReport report = evaluate(net, ds, LossIndex::CrossEntropy);
  REQUIRE(report.accuracy.has_value());
  CHECK(*report.accuracy == 1.0);
  CHECK(report.loss < 0.05);
  CHECK(report.confusion[0][0] == 2);
  CHECK(report.confusion[1][1] == 2);
}

TEST_CASE("a constant classifier scores one half on a balanced test set") {
  DataSet ds = DataSet::with_layout(1, 2);
  const double rows[4][3] = {{0, 1, 0}, {1, 0, 1}, {2, 1, 0}, {3, 0, 1}};
  for (const auto& row : rows) {
    ds.add_row(std::span<const double>(row, 3), Split::Test);
  }
  NetworkBuilder b({1});
  b.add<DenseLayer>(1, 2, Activation::Linear);
  b.add<ProbabilisticLayer>();
  NeuralNetwork net = b.build();
  net.layer(0).set_parameters(std::vector<double>{0, 0, 0.7, 0.3});
  TestingReport report = evaluate(net, ds, LossIndex::CrossEntropy);
  CHECK(*report.accuracy == doctest::Approx(0.5));
}

TEST_CASE("confusion matrix equals the hand count") {
  // 3 classes, 6 rows; constant class-0 predictor except where input forces.
  DataSet ds = DataSet::with_layout(3, 3);
  const double rows[6][6] = {
      {9, 0, 0, 1, 0, 0},  // predicted 0, actual 0
      {9, 0, 0, 0, 1, 0},  // predicted 0, actual 1
      {0, 9, 0, 0, 1, 0},  // predicted 1, actual 1
      {0, 9, 0, 0, 0, 1},  // predicted 1, actual 2
      {0, 0, 9, 0, 0, 1},  // predicted 2, actual 2
      {0, 0, 9, 1, 0, 0},  // predicted 2, actual 0
  };
  for (const auto& row : rows) {
    ds.add_row(std::span<const double>(row, 6), Split::Test);
  }
  NetworkBuilder b({3});
  b.add<DenseLayer>(3, 3, Activation::Linear);
  b.add<ProbabilisticLayer>();
  NeuralNetwork net = b.build();
  net.layer(0).set_parameters(
      std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0});
  TestingReport report = evaluate(net, ds, LossIndex::CrossEntropy);
  CHECK(report.confusion[0][0] == 1);
  CHECK(report.confusion[1][0] == 1);
  CHECK(report.confusion[1][1] == 1);
  CHECK(report.confusion[2][1] == 1);
  CHECK(report.confusion[2][2] == 1);
  CHECK(report.confusion[0][2] == 1);
  std::size_t total = 0;
  for (const auto& row : report.confusion) {
    for (std::size_t count : row) total += count;
  }
  CHECK(total == 6);
  CHECK(*report.accuracy == doctest::Approx(0.5));
}

TEST_CASE("evaluate requires TEST rows and never mutates the network") {
  DataSet empty = xor_dataset(Split::Train);
  NeuralNetwork net = xor_net(3);
  CHECK_THROWS_AS(evaluate(net, empty), std::invalid_argument);

  DataSet ds = xor_dataset(Split::Test);
  const std::uint64_t before = model_digest(net);
  evaluate(net, ds);
  CHECK(model_digest(net) == before);
}
