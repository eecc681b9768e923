/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSMOUTE_MATRIX_HPP
#define CSMOUTE_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstring>
#include <initializer_list>
#include <span>
#include <vector>

#include "csmoute/error.hpp"

namespace csmoute {

/// Dense row-major matrix of doubles. Rows are observations.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    for (const auto& r : rows) {
      if (rows_ == 0) cols_ = r.size();
      if (r.size() != cols_) throw ArgumentError("Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
      ++rows_;
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    assert(r < rows_);
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    assert(r < rows_);
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> values() const noexcept { return data_; }

  void reserve_rows(std::size_t n) { data_.reserve(n * cols_); }

  /// Appends a row; the first row appended to a 0x0 matrix fixes the width.
  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw ArgumentError("Matrix: row width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  /// Removes one row, shifting later rows up by one position.
  void erase_row(std::size_t r) {
    assert(r < rows_);
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
    --rows_;
  }

  Matrix select_rows(std::span<const std::size_t> indices) const {
    Matrix out(0, cols_);
    out.reserve_rows(indices.size());
    for (std::size_t i : indices) out.append_row(row(i));
    return out;
  }

  /// Stacks `other` below this matrix.
  void append_rows(const Matrix& other) {
    if (other.empty()) return;
    if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
    if (other.cols_ != cols_) throw ArgumentError("Matrix: width mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Bitwise equality, distinguishing -0.0 from 0.0.
inline bool bit_identical(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto va = a.values();
  const auto vb = b.values();
  return va.empty() || std::memcmp(va.data(), vb.data(), va.size_bytes()) == 0;
}

}  // namespace csmoute

#endif  // CSMOUTE_MATRIX_HPP
