#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "edgesim/dl/tensor.hpp"

namespace edgesim::dl {

enum class Split : std::uint8_t { Train, Validation, Test };

// Sample matrix (rows = samples) with disjoint input/target column sets and
// one split tag per row.
class DataSet {
 public:
  DataSet(std::size_t columns, std::vector<std::size_t> input_columns,
          std::vector<std::size_t> target_columns)
      : columns_(columns),
        input_columns_(std::move(input_columns)),
        target_columns_(std::move(target_columns)) {
    if (columns_ == 0) {
      throw std::invalid_argument("DataSet: column count must be >= 1");
    }
    auto check = [&](const std::vector<std::size_t>& cols, const char* what) {
      for (std::size_t c : cols) {
        if (c >= columns_) {
          throw std::invalid_argument(std::string("DataSet: ") + what +
                                      " column out of range");
        }
      }
    };
    check(input_columns_, "input");
    check(target_columns_, "target");
    for (std::size_t c : input_columns_) {
      if (std::find(target_columns_.begin(), target_columns_.end(), c) !=
          target_columns_.end()) {
        throw std::invalid_argument(
            "DataSet: input and target columns must be disjoint");
      }
    }
  }

  // First `inputs` columns are inputs, next `targets` columns are targets.
  static DataSet with_layout(std::size_t inputs, std::size_t targets) {
    std::vector<std::size_t> in(inputs), tg(targets);
    for (std::size_t i = 0; i < inputs; ++i) in[i] = i;
    for (std::size_t i = 0; i < targets; ++i) tg[i] = inputs + i;
    return DataSet(inputs + targets, std::move(in), std::move(tg));
  }

  void add_row(std::span<const double> values, Split split) {
    if (values.size() != columns_) {
      throw std::invalid_argument("DataSet: row width mismatch");
    }
    rows_.insert(rows_.end(), values.begin(), values.end());
    splits_.push_back(split);
  }

  std::size_t row_count() const { return splits_.size(); }
  std::size_t column_count() const { return columns_; }
  std::size_t input_count() const { return input_columns_.size(); }
  std::size_t target_count() const { return target_columns_.size(); }

  const std::vector<std::size_t>& input_columns() const { return input_columns_; }
  const std::vector<std::size_t>& target_columns() const { return target_columns_; }

  Split split(std::size_t row) const { return splits_.at(row); }

  std::vector<std::size_t> rows_with(Split split) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < splits_.size(); ++i) {
      if (splits_[i] == split) out.push_back(i);
    }
    return out;
  }

  Tensor input_row(std::size_t row) const {
    return gather(row, input_columns_);
  }
  Tensor target_row(std::size_t row) const {
    return gather(row, target_columns_);
  }

 private:
  Tensor gather(std::size_t row, const std::vector<std::size_t>& cols) const {
    if (row >= splits_.size()) {
      throw std::out_of_range("DataSet: row out of range");
    }
    std::vector<double> out(cols.size());
    const double* base = rows_.data() + row * columns_;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out[i] = base[cols[i]];
    }
    return Tensor::from_vector(std::move(out));
  }

  std::size_t columns_;
  std::vector<std::size_t> input_columns_;
  std::vector<std::size_t> target_columns_;
  std::vector<double> rows_;  // row-major, row_count x columns
  std::vector<Split> splits_;
};

}  // namespace edgesim::dl
