#include "edgesim/apps/sample_source.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edgesim::apps {

TwoGaussiansSource::TwoGaussiansSource(std::size_t features,
                                       des::RandomStream stream, double sigma)
    : features_(features), sigma_(sigma), stream_(std::move(stream)) {
  if (features_ == 0) {
    throw std::invalid_argument("TwoGaussiansSource: features must be >= 1");
  }
}

SampleRecord TwoGaussiansSource::next(std::uint64_t id) {
  SampleRecord sample;
  sample.id = id;
  const std::uint64_t cls = stream_.next_below(2);
  const double mean = cls == 1 ? 1.0 : -1.0;
  sample.features.resize(features_);
  for (auto& f : sample.features) {
    f = stream_.normal(mean, sigma_);
  }
  sample.targets = {cls == 0 ? 1.0 : 0.0, cls == 1 ? 1.0 : 0.0};
  return sample;
}

XorSource::XorSource(des::RandomStream stream) : stream_(std::move(stream)) {}

SampleRecord XorSource::next(std::uint64_t id) {
  SampleRecord sample;
  sample.id = id;
  const double a = static_cast<double>(stream_.next_below(2));
  const double b = static_cast<double>(stream_.next_below(2));
  const bool odd = (a != b);
  sample.features = {a, b};
  sample.targets = {odd ? 0.0 : 1.0, odd ? 1.0 : 0.0};
  return sample;
}

FileSource::FileSource(const std::string& path, std::size_t features,
                       std::size_t targets)
    : features_(features), targets_(targets) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("FileSource: cannot open " + path);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<double> row;
    double v = 0.0;
    while (ss >> v) row.push_back(v);
    if (row.empty()) continue;
    if (row.size() != features_ + targets_) {
      throw std::invalid_argument("FileSource: row width mismatch in " + path);
    }
    rows_.push_back(std::move(row));
  }
  if (rows_.empty()) {
    throw std::invalid_argument("FileSource: no rows in " + path);
  }
}

SampleRecord FileSource::next(std::uint64_t id) {
  const auto& row = rows_[cursor_];
  cursor_ = (cursor_ + 1) % rows_.size();
  SampleRecord sample;
  sample.id = id;
  sample.features.assign(row.begin(), row.begin() + features_);
  sample.targets.assign(row.begin() + features_, row.end());
  return sample;
}

}  // namespace edgesim::apps
