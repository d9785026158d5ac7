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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cqv/gf.hpp"

namespace cqv {

namespace detail {
extern const std::string_view kMubTableDim4;
extern const std::string_view kMubTableDim8;
}  // namespace detail

namespace {

ControlledFamily qubit_family() {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  return make_family(2, {computational_basis(2),
                         ComplexMatrix{{h, h}, {h, -h}},
                         ComplexMatrix{{h, h}, {h * i, -h * i}}});
}

/// Quadratic additive-character construction for odd prime powers.
ControlledFamily odd_prime_power_family(std::size_t n) {
  const auto pk = prime_power(n);
  const auto field = field_make(pk->first, pk->second);
  const double p = static_cast<double>(field->p);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<FieldElement> elems;
  for (std::size_t x = 0; x < n; ++x) elems.push_back(field_element(field, x));

  std::vector<ComplexMatrix> bases{computational_basis(n)};
  for (std::size_t a = 0; a < n; ++a) {
    ComplexMatrix basis(n, n);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t x = 0; x < n; ++x) {
        const FieldElement x2 = field_mul(elems[x], elems[x]);
        const FieldElement arg =
            field_add(field_mul(elems[a], x2), field_mul(elems[t], elems[x]));
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(field_trace(arg)) / p;
        basis(x, t) = norm * Complex(std::cos(angle), std::sin(angle));
      }
    }
    bases.push_back(std::move(basis));
  }
  return make_family(n, std::move(bases));
}

}  // namespace

bool mub_supported(std::size_t n) {
  return std::find(std::begin(kMubDimensions), std::end(kMubDimensions), n) !=
         std::end(kMubDimensions);
}

ControlledFamily parse_mub_table(std::string_view text, std::size_t n, double tol) {
  std::vector<Complex> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra)) {
      throw std::runtime_error("MUB table line " + std::to_string(line_no) +
                               ": expected 're im'");
    }
    entries.emplace_back(re, im);
  }
  const std::size_t expected = (n + 1) * n * n;
  if (entries.size() != expected) {
    throw std::runtime_error("MUB table for n = " + std::to_string(n) + ": expected " +
                             std::to_string(expected) + " entries, found " +
                             std::to_string(entries.size()));
  }
  std::vector<ComplexMatrix> bases;
  for (std::size_t a = 0; a <= n; ++a) {
    ComplexMatrix basis(n, n);
    // Rows of the file are basis vectors; they become columns here.
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t x = 0; x < n; ++x) basis(x, t) = entries[(a * n + t) * n + x];
    }
    bases.push_back(std::move(basis));
  }
  ControlledFamily family = [&] {
    try {
      return make_family(n, std::move(bases), tol);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("MUB table: ") + e.what());
    }
  }();
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (!is_unbiased_pair(family.basis(a), family.basis(b), n, tol)) {
        throw std::runtime_error("MUB table: bases " + std::to_string(a) + " and " +
                                 std::to_string(b) + " are not unbiased");
      }
    }
  }
  return family;
}

ControlledFamily mub_family(std::size_t n) {
  if (!mub_supported(n)) {
    throw std::invalid_argument("mub_family: unsupported dimension " + std::to_string(n));
  }
  switch (n) {
    case 2:
      return qubit_family();
    case 4:
      return parse_mub_table(detail::kMubTableDim4, 4);
    case 8:
      return parse_mub_table(detail::kMubTableDim8, 8);
    default:
      return odd_prime_power_family(n);
  }
}

}  // namespace cqv
