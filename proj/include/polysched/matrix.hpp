/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef POLYSCHED_MATRIX_HPP_
#define POLYSCHED_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "polysched/rational.hpp"

namespace polysched {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<int64_t>> rows);

  static RatMatrix identity(size_t n);
  static RatMatrix from_rows(const std::vector<std::vector<int64_t>> &rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational &operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }
  const Rational &operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Rational> row(size_t r) { return {entries_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Rational> values);

  RatMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const RatMatrix &other) const = default;

  friend RatMatrix operator*(const RatMatrix &a, const RatMatrix &b);
  friend RatMatrix operator-(const RatMatrix &a, const RatMatrix &b);

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Rank over the rationals (exact Gaussian elimination).
size_t rank(const RatMatrix &m);

/// Inverse of a square matrix. Throws SingularGram when singular.
RatMatrix inverse(const RatMatrix &m);

/// I - H^T (H H^T)^{-1} H: the exact orthogonal projector onto the complement
/// of the row space of h. Requires full row rank (SingularGram otherwise).
/// With no rows, returns the identity over h.cols() columns.
RatMatrix orthogonal_projector(const RatMatrix &h);

/// The projector scaled to integer entries: multiplied by the lcm of all
/// denominators, then each nonzero row divided by the gcd of its entries.
/// Every row still satisfies H * row^T = 0.
RatMatrix orthogonal_complement(const RatMatrix &h);

}  // namespace polysched

#endif  // POLYSCHED_MATRIX_HPP_
