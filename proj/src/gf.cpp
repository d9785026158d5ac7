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

#include "cqv/gf.hpp"

#include <stdexcept>
#include <string>

namespace cqv {

namespace {

using Poly = std::vector<std::size_t>;  // constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo monic-or-not divisor d over GF(p).
Poly poly_mod(Poly a, const Poly& d, std::size_t p) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  // Inverse of the leading coefficient by search; p is tiny.
  std::size_t lead_inv = 1;
  while ((lead_inv * d.back()) % p != 1) ++lead_inv;
  while (a.size() > dd) {
    const std::size_t shift = a.size() - 1 - dd;
    const std::size_t factor = (a.back() * lead_inv) % p;
    for (std::size_t i = 0; i <= dd; ++i) {
      a[i + shift] = (a[i + shift] + p - (factor * d[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly monic_from_index(std::size_t index, std::size_t degree, std::size_t p) {
  Poly out(degree + 1, 0);
  for (std::size_t i = 0; i < degree; ++i) {
    out[i] = index % p;
    index /= p;
  }
  out[degree] = 1;
  return out;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field || !b.field || a.field->p != b.field->p || a.field->k != b.field->k ||
      a.field->modulus != b.field->modulus) {
    throw std::invalid_argument("field elements belong to different fields");
  }
}

}  // namespace

std::size_t FieldSpec::order() const { return ipow(p, k); }

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> prime_power(std::size_t n) {
  if (n < 2) return std::nullopt;
  std::size_t p = 2;
  while (n % p != 0) ++p;
  std::size_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(p, k);
}

bool is_irreducible(std::span<const std::size_t> poly, std::size_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    for (std::size_t idx = 0; idx < ipow(p, d); ++idx) {
      if (poly_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
    }
  }
  return true;
}

std::shared_ptr<const FieldSpec> field_make(std::size_t p, std::size_t k) {
  if (!is_prime(p)) {
    throw std::invalid_argument("field_make: " + std::to_string(p) + " is not prime");
  }
  if (k == 0) throw std::invalid_argument("field_make: degree must be positive");
  if (ipow(p, k) > kMaxFieldOrder) {
    throw std::invalid_argument("field_make: GF(" + std::to_string(p) + "^" + std::to_string(k) +
                                ") exceeds the supported order " +
                                std::to_string(kMaxFieldOrder));
  }
  auto spec = std::make_shared<FieldSpec>();
  spec->p = p;
  spec->k = k;
  if (k == 1) {
    spec->modulus = {0, 1};
    return spec;
  }
  for (std::size_t idx = 0; idx < ipow(p, k); ++idx) {
    Poly candidate = monic_from_index(idx, k, p);
    if (is_irreducible(candidate, p)) {
      spec->modulus = std::move(candidate);
      return spec;
    }
  }
  throw std::logic_error("field_make: no irreducible polynomial found");
}

FieldElement field_element(const std::shared_ptr<const FieldSpec>& field, std::size_t index) {
  if (index >= field->order()) {
    throw std::out_of_range("field_element: index " + std::to_string(index) +
                            " out of range for a field of order " +
                            std::to_string(field->order()));
  }
  FieldElement e{field, std::vector<std::size_t>(field->k, 0)};
  for (std::size_t i = 0; i < field->k; ++i) {
    e.coeffs[i] = index % field->p;
    index /= field->p;
  }
  return e;
}

std::size_t element_index(const FieldElement& e) {
  std::size_t index = 0;
  for (std::size_t i = e.coeffs.size(); i-- > 0;) index = index * e.field->p + e.coeffs[i];
  return index;
}

FieldElement field_zero(const std::shared_ptr<const FieldSpec>& field) {
  return field_element(field, 0);
}

FieldElement field_one(const std::shared_ptr<const FieldSpec>& field) {
  return field_element(field, 1);
}

FieldElement field_add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  FieldElement out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % a.field->p;
  }
  return out;
}

FieldElement field_neg(const FieldElement& a) {
  FieldElement out = a;
  for (auto& c : out.coeffs) c = (a.field->p - c) % a.field->p;
  return out;
}

FieldElement field_mul(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const std::size_t p = a.field->p;
  const std::size_t k = a.field->k;
  Poly prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p;
  }
  Poly reduced = k == 1 ? Poly{prod[0]} : poly_mod(prod, a.field->modulus, p);
  FieldElement out{a.field, std::vector<std::size_t>(k, 0)};
  for (std::size_t i = 0; i < reduced.size() && i < k; ++i) out.coeffs[i] = reduced[i];
  return out;
}

FieldElement field_inv(const FieldElement& a) {
  if (element_index(a) == 0) throw std::domain_error("field_inv: zero has no inverse");
  // The multiplicative group is tiny; search it.
  const FieldElement one = field_one(a.field);
  for (std::size_t idx = 1; idx < a.field->order(); ++idx) {
    FieldElement candidate = field_element(a.field, idx);
    if (field_mul(a, candidate) == one) return candidate;
  }
  throw std::logic_error("field_inv: modulus is not irreducible");
}

std::size_t field_trace(const FieldElement& a) {
  FieldElement power = a;
  FieldElement sum = a;
  for (std::size_t r = 1; r < a.field->k; ++r) {
    FieldElement next = field_one(a.field);
    for (std::size_t e = 0; e < a.field->p; ++e) next = field_mul(next, power);
    power = next;
    sum = field_add(sum, power);
  }
  for (std::size_t i = 1; i < sum.coeffs.size(); ++i) {
    if (sum.coeffs[i] != 0) throw std::logic_error("field_trace: result outside the prime field");
  }
  return sum.coeffs[0];
}

FunctionFamily function_family(std::size_t n) {
  const auto pk = prime_power(n);
  if (!pk || n > kMaxFieldOrder) {
    throw std::invalid_argument("function_family: unsupported n = " + std::to_string(n) +
                                " (need a prime power <= " + std::to_string(kMaxFieldOrder) + ")");
  }
  const auto field = field_make(pk->first, pk->second);
  std::vector<FieldElement> elems;
  for (std::size_t i = 0; i < n; ++i) elems.push_back(field_element(field, i));

  FunctionFamily fam{n, {}};
  fam.functions.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<std::size_t> f(n + 1);
      for (std::size_t c = 0; c < n; ++c) {
        f[c] = element_index(field_add(field_mul(elems[s], elems[c]), elems[t]));
      }
      f[n] = s;
      fam.functions.push_back(std::move(f));
    }
  }
  return fam;
}

std::size_t collisions(std::span<const std::size_t> f, std::span<const std::size_t> g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("collisions: functions have lengths " + std::to_string(f.size()) +
                                " and " + std::to_string(g.size()));
  }
  std::size_t count = 0;
  for (std::size_t a = 0; a < f.size(); ++a) count += f[a] == g[a] ? 1 : 0;
  return count;
}

}  // namespace cqv
