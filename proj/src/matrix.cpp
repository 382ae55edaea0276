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
#include "polysched/matrix.hpp"

#include <sstream>
#include <utility>

#include "polysched/error.hpp"

namespace polysched {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (int64_t v : r) entries_.emplace_back(v);
  }
}

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<int64_t>> &rows, size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row width differs from column count");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void RatMatrix::append_row(std::span<const Rational> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "appended row has wrong width");
  entries_.insert(entries_.end(), values.begin(), values.end());
  ++rows_;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto &v : entries_)
    if (!v.is_zero()) return false;
  return true;
}

RatMatrix operator*(const RatMatrix &a, const RatMatrix &b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  RatMatrix out(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i) {
    for (size_t k = 0; k < a.cols_; ++k) {
      const Rational &aik = a(i, k);
      if (aik.is_zero()) continue;
      for (size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

RatMatrix operator-(const RatMatrix &a, const RatMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  RatMatrix out = a;
  for (size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

std::string RatMatrix::to_string() const {
  std::ostringstream os;
  for (size_t r = 0; r < rows_; ++r) {
    os << "[";
    for (size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << "]\n";
  }
  return os.str();
}

size_t rank(const RatMatrix &input) {
  RatMatrix m = input;
  size_t rank = 0;
  for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank)
      for (size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
    for (size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      Rational f = m(r, col) / m(rank, col);
      for (size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

RatMatrix inverse(const RatMatrix &input) {
  const size_t n = input.rows();
  if (input.cols() != n) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularGram, "matrix is singular");
    if (pivot != col) {
      for (size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    Rational p = a(col, col);
    for (size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Rational f = a(r, col);
      for (size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

RatMatrix orthogonal_projector(const RatMatrix &h) {
  const size_t n = h.cols();
  if (h.rows() == 0) return RatMatrix::identity(n);
  RatMatrix ht = h.transpose();
  RatMatrix gram = h * ht;
  RatMatrix gram_inv;
  try {
    gram_inv = inverse(gram);
  } catch (const Error &) {
    throw Error(ErrorKind::SingularGram, "rows of H are linearly dependent");
  }
  return RatMatrix::identity(n) - ht * gram_inv * h;
}

RatMatrix orthogonal_complement(const RatMatrix &h) {
  RatMatrix p = orthogonal_projector(h);
  mpz_class scale = 1;
  for (size_t r = 0; r < p.rows(); ++r)
    for (size_t c = 0; c < p.cols(); ++c) scale = lcm(scale, p(r, c).denominator());
  Rational factor{mpz_class(scale)};
  for (size_t r = 0; r < p.rows(); ++r) {
    mpz_class g = 0;
    for (size_t c = 0; c < p.cols(); ++c) {
      p(r, c) *= factor;
      g = gcd(g, p(r, c).numerator());
    }
    if (g > 1) {
      Rational div{mpz_class(g)};
      for (size_t c = 0; c < p.cols(); ++c) p(r, c) /= div;
    }
  }
  return p;
}

}  // namespace polysched
