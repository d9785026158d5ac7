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

// Finite fields GF(p^k) at desk scale and the prime-power constructions
// built on them: collision-1 function families and complete sets of
// mutually unbiased bases.
//
// Element indexing: an element with coefficient vector (c_0, ..., c_{k-1})
// (c_0 the constant term) has index c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
// Index 0 is zero and index 1 is one; the remaining elements follow in
// lexicographic order of (c_{k-1}, ..., c_0).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cqv/families.hpp"

namespace cqv {

/// Largest field order supported by field_make.
inline constexpr std::size_t kMaxFieldOrder = 16;

struct FieldSpec {
  std::size_t p = 2;
  std::size_t k = 1;
  /// Monic modulus, coefficients from the constant term up; size k + 1.
  /// For k = 1 this is x (unused; the prime field needs no reduction).
  std::vector<std::size_t> modulus;

  std::size_t order() const;
};

struct FieldElement {
  std::shared_ptr<const FieldSpec> field;
  std::vector<std::size_t> coeffs;  // size k, each < p

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.coeffs == b.coeffs;
  }
};

bool is_prime(std::size_t n);
/// (p, k) with n = p^k, or nullopt when n is not a prime power.
std::optional<std::pair<std::size_t, std::size_t>> prime_power(std::size_t n);

/// Exhaustive irreducibility test by trial division with every monic
/// polynomial of degree 1..deg/2.
bool is_irreducible(std::span<const std::size_t> poly, std::size_t p);

/// Throws std::invalid_argument when p is not prime, k == 0, or p^k exceeds
/// kMaxFieldOrder. The modulus is the least irreducible monic polynomial of
/// degree k, ordered as integers c_0 + c_1 p + ... + c_k p^k.
std::shared_ptr<const FieldSpec> field_make(std::size_t p, std::size_t k);

FieldElement field_element(const std::shared_ptr<const FieldSpec>& field, std::size_t index);
std::size_t element_index(const FieldElement& e);
FieldElement field_zero(const std::shared_ptr<const FieldSpec>& field);
FieldElement field_one(const std::shared_ptr<const FieldSpec>& field);

FieldElement field_add(const FieldElement& a, const FieldElement& b);
FieldElement field_neg(const FieldElement& a);
FieldElement field_mul(const FieldElement& a, const FieldElement& b);
/// Throws std::domain_error for zero.
FieldElement field_inv(const FieldElement& a);
/// Absolute trace a + a^p + ... + a^(p^(k-1)), as a label in [0, p).
std::size_t field_trace(const FieldElement& a);

/// n^2 functions [n+1] -> [n] stored as arrays of length n + 1.
struct FunctionFamily {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> functions;
};

/// f_{s,t}(c) = s * x_c + t for c < n, and f_{s,t}(n) = index(s); function
/// number index(s) * n + index(t). Throws for n not a supported prime power.
FunctionFamily function_family(std::size_t n);

/// |{a : f(a) = g(a)}|. Throws std::invalid_argument on a length mismatch.
std::size_t collisions(std::span<const std::size_t> f, std::span<const std::size_t> g);

/// Dimensions for which mub_family is available.
inline constexpr std::size_t kMubDimensions[] = {2, 3, 4, 5, 7, 8, 9};
bool mub_supported(std::size_t n);

/// n + 1 pairwise unbiased bases of C^n, computational basis first.
///   n = 2        : eigenbases of Z, X, Y
///   odd n = p^k  : columns t of basis a are (1/sqrt n) w^{tr(a x^2 + t x)}
///   n = 4, 8     : embedded tables from data/, validated on load
/// Throws std::invalid_argument for unsupported n.
ControlledFamily mub_family(std::size_t n);

/// Parses a MUB table (see data/README.md) into n + 1 bases of C^n and
/// validates unitarity and pairwise unbiasedness. Throws std::runtime_error
/// on malformed or invalid input.
ControlledFamily parse_mub_table(std::string_view text, std::size_t n,
                                 double tol = kDefaultTolerance);

}  // namespace cqv
