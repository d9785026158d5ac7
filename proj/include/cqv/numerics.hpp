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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace cqv {

using Complex = std::complex<double>;

/// Absolute entrywise tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTolerance = 1e-9;

/**
 * Dense row-major complex matrix.
 *
 * This is the value of a single component of a 2-cell: a linear map between
 * the (finite-dimensional) Hilbert spaces sitting on the wires of a diagram.
 * Shapes are always at least 1x1; a scalar is a 1x1 matrix.
 */
class ComplexMatrix {
 public:
  using Storage =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  ComplexMatrix() : ComplexMatrix(1, 1) {}
  /// Zero matrix of the given shape. Throws std::invalid_argument on a zero
  /// dimension.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; entries.size() must equal rows * cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
  explicit ComplexMatrix(Storage storage);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix scalar(Complex value);
  static ComplexMatrix column(std::span<const Complex> entries);
  static ComplexMatrix row(std::span<const Complex> entries);

  std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(data_.cols()); }
  bool is_square() const { return data_.rows() == data_.cols(); }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  /// Row-major view of all entries.
  std::span<const Complex> entries() const {
    return {data_.data(), static_cast<std::size_t>(data_.size())};
  }

  const Storage& eigen() const { return data_; }

  /// Column c as an m x 1 matrix.
  ComplexMatrix column_at(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  std::string shape_string() const;

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  Storage data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Matrix product a * b. Throws std::invalid_argument when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; the result has shape (a.rows*b.rows) x (a.cols*b.cols).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Entrywise complex conjugate.
ComplexMatrix conjugate(const ComplexMatrix& a);

/// Trace of a square matrix.
Complex trace(const ComplexMatrix& a);

/// Maximum entrywise modulus of a - b. Throws on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Maximum entrywise modulus.
double max_abs(const ComplexMatrix& a);

/// True iff both a*a^dagger and a^dagger*a are within tol of the identity in
/// the max norm. Throws std::invalid_argument for a non-square matrix.
bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTolerance);

/// Max-norm deviation of a^dagger*a and a*a^dagger from the identity.
double unitarity_deviation(const ComplexMatrix& a);

}  // namespace cqv
