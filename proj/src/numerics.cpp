// Copyright 2026 The cqv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqv/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqv {

namespace {

Eigen::Index to_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_positive_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) {
  require_positive_shape(rows, cols);
  data_ = Storage::Zero(to_index(rows), to_index(cols));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::span<const Complex> entries)
    : ComplexMatrix(rows, cols) {
  if (entries.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(rows * cols) +
                                " entries for shape " + shape_string() + ", got " +
                                std::to_string(entries.size()));
  }
  std::copy(entries.begin(), entries.end(), data_.data());
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  require_positive_shape(r, c);
  data_ = Storage::Zero(to_index(r), to_index(c));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("ComplexMatrix: ragged initializer list");
    }
    std::size_t j = 0;
    for (const auto& v : row) {
      (*this)(i, j++) = v;
    }
    ++i;
  }
}

ComplexMatrix::ComplexMatrix(Storage storage) : data_(std::move(storage)) {
  require_positive_shape(rows(), cols());
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  require_positive_shape(n, n);
  return ComplexMatrix(Storage::Identity(to_index(n), to_index(n)));
}

ComplexMatrix ComplexMatrix::scalar(Complex value) {
  ComplexMatrix m(1, 1);
  m(0, 0) = value;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
  return ComplexMatrix(entries.size(), 1, entries);
}

ComplexMatrix ComplexMatrix::row(std::span<const Complex> entries) {
  return ComplexMatrix(1, entries.size(), entries);
}

ComplexMatrix ComplexMatrix::column_at(std::size_t c) const {
  if (c >= cols()) {
    throw std::out_of_range("ComplexMatrix::column_at: column " + std::to_string(c) +
                            " of " + shape_string());
  }
  return ComplexMatrix(Storage(data_.col(to_index(c))));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows() != other.rows() || cols() != other.cols()) {
    throw std::invalid_argument("ComplexMatrix: cannot add " + other.shape_string() +
                                " to " + shape_string());
  }
  data_ += other.data_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  data_ *= s;
  return *this;
}

std::string ComplexMatrix::shape_string() const {
  return std::to_string(rows()) + "x" + std::to_string(cols());
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.data_ == b.data_;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix neg = b;
  neg *= Complex(-1.0, 0.0);
  return a + neg;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: shape mismatch " + a.shape_string() + " * " +
                                b.shape_string());
  }
  return ComplexMatrix(ComplexMatrix::Storage(a.eigen() * b.eigen()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t br = b.rows();
  const std::size_t bc = b.cols();
  ComplexMatrix::Storage out(to_index(a.rows() * br), to_index(a.cols() * bc));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.block(to_index(i * br), to_index(j * bc), to_index(br), to_index(bc)) =
          a(i, j) * b.eigen();
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.eigen().adjoint()));
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.eigen().conjugate()));
}

Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("trace: matrix is not square (" + a.shape_string() + ")");
  }
  return a.eigen().trace();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch " + a.shape_string() +
                                " vs " + b.shape_string());
  }
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& a) { return a.eigen().cwiseAbs().maxCoeff(); }

double unitarity_deviation(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("is_unitary: matrix is not square (" + a.shape_string() +
                                ")");
  }
  const auto id = ComplexMatrix::Storage::Identity(a.eigen().rows(), a.eigen().cols());
  const double left = (a.eigen().adjoint() * a.eigen() - id).cwiseAbs().maxCoeff();
  const double right = (a.eigen() * a.eigen().adjoint() - id).cwiseAbs().maxCoeff();
  return std::max(left, right);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return unitarity_deviation(a) <= tol;
}

}  // namespace cqv
