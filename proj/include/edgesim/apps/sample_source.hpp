#pragma once

#include <memory>
#include <string>

#include "edgesim/des/random.hpp"
#include "edgesim/apps/payload.hpp"

namespace edgesim::apps {

// Labeled-sample generator feeding terminal devices and the held-out
// evaluation set. Implementations are deterministic given their stream.
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  virtual std::size_t feature_count() const = 0;
  virtual std::size_t target_count() const = 0;

  // Produces the next sample, stamped with the caller-supplied id.
  virtual SampleRecord next(std::uint64_t id) = 0;
};

// Binary classification: class c's features are N(+1, sigma) for c = 1 and
// N(-1, sigma) for c = 0 on every dimension; targets one-hot.
class TwoGaussiansSource : public SampleSource {
 public:
  TwoGaussiansSource(std::size_t features, des::RandomStream stream,
                     double sigma = 0.5);

  std::size_t feature_count() const override { return features_; }
  std::size_t target_count() const override { return 2; }
  SampleRecord next(std::uint64_t id) override;

 private:
  std::size_t features_;
  double sigma_;
  des::RandomStream stream_;
};

// XOR corners: two binary features drawn uniformly, one-hot target of a ^ b.
class XorSource : public SampleSource {
 public:
  explicit XorSource(des::RandomStream stream);

  std::size_t feature_count() const override { return 2; }
  std::size_t target_count() const override { return 2; }
  SampleRecord next(std::uint64_t id) override;

 private:
  des::RandomStream stream_;
};

// Rows of whitespace-separated doubles, first `features` columns then
// `targets` columns; cycles when exhausted. Throws on open/shape failure.
class FileSource : public SampleSource {
 public:
  FileSource(const std::string& path, std::size_t features, std::size_t targets);

  std::size_t feature_count() const override { return features_; }
  std::size_t target_count() const override { return targets_; }
  SampleRecord next(std::uint64_t id) override;

 private:
  std::size_t features_;
  std::size_t targets_;
  std::vector<std::vector<double>> rows_;
  std::size_t cursor_ = 0;
};

}  // namespace edgesim::apps
