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


#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cqv/numerics.hpp"
#include "support/oracles.hpp"

using namespace cqv;
using Catch::Approx;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

}  // namespace

TEST_CASE("dagger of a nilpotent example") {
  const ComplexMatrix a{{0.0, I}, {0.0, 0.0}};
  const ComplexMatrix expected{{0.0, 0.0}, {-I, 0.0}};
  CHECK(max_abs_diff(dagger(a), expected) == 0.0);
}

TEST_CASE("hadamard squares to identity") {
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix H{{h, h}, {h, -h}};
  CHECK(max_abs_diff(matmul(H, H), ComplexMatrix::identity(2)) < 1e-15);
  CHECK(is_unitary(H));
}

TEST_CASE("matmul rejects mismatched shapes") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("kron dimensions and a small example") {
  const ComplexMatrix a{{1.0, 2.0}};
  const ComplexMatrix b{{0.0}, {I}};
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 2);
  CHECK(k(1, 1) == 2.0 * I);
  CHECK(k(0, 0) == Complex(0.0));
}

TEST_CASE("matmul and kron agree with naive loops") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 4, k = 1 + rng() % 4, m = 1 + rng() % 4;
    const ComplexMatrix a = random_matrix(rng, n, k);
    const ComplexMatrix b = random_matrix(rng, k, m);
    CHECK(oracle::dense_diff(matmul(a, b), oracle::naive_matmul(oracle::to_dense(a), oracle::to_dense(b))) < 1e-12);
    const ComplexMatrix c = random_matrix(rng, m, n);
    CHECK(oracle::dense_diff(kron(a, c), oracle::naive_kron(oracle::to_dense(a), oracle::to_dense(c))) < 1e-12);
  }
}

TEST_CASE("algebraic properties") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 3, 2);
    const ComplexMatrix b = random_matrix(rng, 2, 4);
    const ComplexMatrix c = random_matrix(rng, 4, 3);
    CHECK(max_abs_diff(dagger(dagger(a)), a) == 0.0);
    CHECK(max_abs_diff(dagger(matmul(a, b)), matmul(dagger(b), dagger(a))) < 1e-12);
    CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-12);
    // mixed product rule
    const ComplexMatrix d = random_matrix(rng, 3, 2);
    const ComplexMatrix e = random_matrix(rng, 2, 2);
    CHECK(max_abs_diff(matmul(kron(a, b), kron(e, c)), kron(matmul(a, e), matmul(b, c))) < 1e-12);
    CHECK(std::abs(trace(matmul(a, dagger(d))) - trace(matmul(dagger(d), a))) < 1e-12);
    CHECK(max_abs_diff(conjugate(conjugate(a)), a) == 0.0);
  }
}

TEST_CASE("unitarity deviation") {
  CHECK(unitarity_deviation(ComplexMatrix::identity(3)) == 0.0);
  const ComplexMatrix almost{{1.0, 0.0}, {0.0, 1.0 + 1e-6}};
  CHECK(unitarity_deviation(almost) == Approx(2e-6).margin(1e-9));
  CHECK_FALSE(is_unitary(almost, 1e-9));
  CHECK(is_unitary(almost, 1e-5));
  CHECK_THROWS_AS(is_unitary(ComplexMatrix(2, 3)), std::invalid_argument);
  const ComplexMatrix d12{{1.0, 0.0}, {0.0, 2.0}};
  CHECK_FALSE(is_unitary(d12, 1e-10));
  CHECK(is_unitary(ComplexMatrix::identity(3), 1e-10));
}

TEST_CASE("max_abs_diff examples") {
  CHECK(max_abs_diff(ComplexMatrix::identity(2), ComplexMatrix(2, 2)) == 1.0);
  CHECK_THROWS_AS(max_abs_diff(ComplexMatrix(2, 2), ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("kron is associative and bilinear; unitarity ignores global phase") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 2, 3);
    const ComplexMatrix b = random_matrix(rng, 1, 2);
    const ComplexMatrix c = random_matrix(rng, 2, 2);
    const ComplexMatrix a2 = random_matrix(rng, 2, 3);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
    const Complex s(0.3, -1.2);
    CHECK(max_abs_diff(kron(a + s * a2, b), kron(a, b) + s * kron(a2, b)) < 1e-12);
  }
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix H{{h, h}, {h, -h}};
  for (double theta : {0.3, 1.7, 4.0}) CHECK(is_unitary(std::polar(1.0, theta) * H, 1e-12));
}

TEST_CASE("scalar, column and row factories") {
  CHECK(ComplexMatrix::scalar(I)(0, 0) == I);
  const std::vector<Complex> v{1.0, I, 2.0};
  const ComplexMatrix col = ComplexMatrix::column(v);
  const ComplexMatrix row = ComplexMatrix::row(v);
  CHECK(col.rows() == 3);
  CHECK(row.cols() == 3);
  CHECK(max_abs_diff(dagger(col), conjugate(row)) == 0.0);
  CHECK(trace(matmul(row, col)) == Complex(1.0 - 1.0 + 4.0, 0.0));
}

TEST_CASE("identity cases") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(matmul(i2, i2) == i2);
  CHECK(kron(i2, i2) == ComplexMatrix::identity(4));
  CHECK(dagger(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));
  const ComplexMatrix a{{1.0, 2.0}, {I, -1.0}};
  CHECK(max_abs_diff(a, a) == 0.0);
}

TEST_CASE("kron of two columns") {
  const std::vector<Complex> u{2.0, I}, v{3.0, -1.0};
  const auto k = kron(ComplexMatrix::column(u), ComplexMatrix::column(v));
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 1);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(k(2 * x + y, 0) == u[x] * v[y]);
}

TEST_CASE("max_abs_diff matches an entrywise loop") {
  std::mt19937 rng(31);
  const ComplexMatrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 3, 4);
  double worst = 0.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  CHECK(max_abs_diff(a, b) == worst);
}
