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


#include <catch2/catch_amalgamated.hpp>

#include "cqv/gf.hpp"
#include "support/oracles.hpp"

using namespace cqv;

namespace {

const std::pair<std::size_t, std::size_t> kFields[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},
                                                       {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}};

}  // namespace

TEST_CASE("prime and prime power recognition") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK(prime_power(8) == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(prime_power(9) == std::pair<std::size_t, std::size_t>{3, 2});
  CHECK_FALSE(prime_power(6));
  CHECK_FALSE(prime_power(1));
}

TEST_CASE("irreducibility") {
  const std::size_t x2x1[] = {1, 1, 1};
  const std::size_t x2p1[] = {1, 0, 1};
  CHECK(is_irreducible(x2x1, 2));
  CHECK_FALSE(is_irreducible(x2p1, 2));  // (x+1)^2
  CHECK(is_irreducible(x2p1, 3));
}

TEST_CASE("GF(4): x times x is x plus 1") {
  const auto f = field_make(2, 2);
  const auto x = field_element(f, 2);
  CHECK(element_index(field_mul(x, x)) == 3);
  CHECK(element_index(field_add(x, field_one(f))) == 3);
}

TEST_CASE("chosen moduli") {
  CHECK(field_make(2, 2)->modulus == std::vector<std::size_t>{1, 1, 1});
  CHECK(field_make(2, 3)->modulus == std::vector<std::size_t>{1, 1, 0, 1});
  CHECK(field_make(3, 2)->modulus == std::vector<std::size_t>{1, 0, 1});
  CHECK(field_make(2, 4)->modulus == std::vector<std::size_t>{1, 1, 0, 0, 1});
}

TEST_CASE("multiplication agrees with schoolbook division") {
  for (auto [p, k] : kFields) {
    const auto f = field_make(p, k);
    const std::size_t q = f->order();
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        const auto ea = field_element(f, a), eb = field_element(f, b);
        CHECK(field_mul(ea, eb).coeffs == oracle::poly_mulmod(ea.coeffs, eb.coeffs, f->modulus, p));
      }
  }
}

TEST_CASE("field axioms by exhaustion") {
  for (auto [p, k] : kFields) {
    const auto f = field_make(p, k);
    const std::size_t q = f->order();
    INFO("q = " << q);
    for (std::size_t a = 0; a < q; ++a) {
      const auto ea = field_element(f, a);
      CHECK(element_index(field_add(ea, field_neg(ea))) == 0);
      CHECK(element_index(field_mul(ea, field_one(f))) == a);
      if (a != 0) CHECK(element_index(field_mul(ea, field_inv(ea))) == 1);
      for (std::size_t b = 0; b < q; ++b) {
        const auto eb = field_element(f, b);
        CHECK(element_index(field_mul(ea, eb)) == element_index(field_mul(eb, ea)));
        for (std::size_t c = 0; c < q; c += 3) {
          const auto ec = field_element(f, c);
          CHECK(element_index(field_mul(ea, field_add(eb, ec))) ==
                element_index(field_add(field_mul(ea, eb), field_mul(ea, ec))));
          CHECK(element_index(field_mul(field_mul(ea, eb), ec)) ==
                element_index(field_mul(ea, field_mul(eb, ec))));
        }
      }
    }
    CHECK_THROWS_AS(field_inv(field_zero(f)), std::domain_error);
  }
}

TEST_CASE("field construction rejects bad orders") {
  CHECK_THROWS(field_make(4, 1));
  CHECK_THROWS(field_make(2, 5));  // 32 > kMaxFieldOrder
  CHECK_THROWS(field_element(field_make(3, 1), 3));
}

TEST_CASE("trace is additive and balanced") {
  for (auto [p, k] : kFields) {
    const auto f = field_make(p, k);
    const std::size_t q = f->order();
    std::vector<std::size_t> counts(p, 0);
    for (std::size_t a = 0; a < q; ++a) {
      const auto ea = field_element(f, a);
      ++counts[field_trace(ea)];
      for (std::size_t b = 0; b < q; ++b) {
        const auto eb = field_element(f, b);
        CHECK(field_trace(field_add(ea, eb)) == (field_trace(ea) + field_trace(eb)) % p);
      }
    }
    for (auto c : counts) CHECK(c == q / p);
  }
}

TEST_CASE("function family collisions") {
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    const auto fam = function_family(n);
    REQUIRE(fam.functions.size() == n * n);
    for (std::size_t i = 0; i < fam.functions.size(); ++i) {
      REQUIRE(fam.functions[i].size() == n + 1);
      for (std::size_t j = 0; j < fam.functions.size(); ++j) {
        const std::size_t c = oracle::brute_collisions(fam.functions[i], fam.functions[j]);
        CHECK(collisions(fam.functions[i], fam.functions[j]) == c);
        // Distinct functions of the family collide exactly once.
        CHECK(c == (i == j ? n + 1 : 1));
      }
    }
  }
  const std::size_t a[] = {0, 1}, b[] = {0};
  CHECK_THROWS_AS(collisions(a, b), std::invalid_argument);
}

TEST_CASE("MUB families in every supported dimension") {
  for (std::size_t n : kMubDimensions) {
    INFO("n = " << n);
    const auto fam = mub_family(n);
    CHECK(fam.dim() == n);
    CHECK(fam.size() == n + 1);
    for (std::size_t a = 0; a < fam.size(); ++a) CHECK(is_unitary(fam.basis(a), 1e-12));
    CHECK(oracle::unbiasedness_gap(fam) < 1e-12);
  }
  CHECK_FALSE(mub_supported(6));
  CHECK_THROWS_AS(mub_family(6), std::invalid_argument);
}

TEST_CASE("MUB table parser") {
  const std::string good =
      "# n = 2\n"
      "1 0\n0 0\n0 0\n1 0\n"
      "0.70710678118654752 0\n0.70710678118654752 0\n"
      "0.70710678118654752 0\n-0.70710678118654752 0\n"
      "0.70710678118654752 0\n0 0.70710678118654752\n"
      "0.70710678118654752 0\n0 -0.70710678118654752\n";
  const auto fam = parse_mub_table(good, 2);
  CHECK(fam.size() == 3);
  CHECK_THROWS_AS(parse_mub_table("1 0\n", 2), std::runtime_error);
  std::string bad = good;
  bad.replace(bad.find("0 0.7071"), 8, "0 0.6071");
  CHECK_THROWS_AS(parse_mub_table(bad, 2), std::runtime_error);
  CHECK_THROWS_AS(parse_mub_table(good + "x y\n", 2), std::runtime_error);
}

TEST_CASE("prime fields") {
  for (std::size_t p : {3u, 5u}) {
    const auto f = field_make(p, 1);
    CHECK(f->order() == p);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) {
        CHECK(element_index(field_mul(field_element(f, a), field_element(f, b))) == a * b % p);
        CHECK(element_index(field_add(field_element(f, a), field_element(f, b))) == (a + b) % p);
      }
  }
}

TEST_CASE("collision count examples") {
  const std::size_t f[] = {2, 0, 1, 1};
  CHECK(collisions(f, f) == 4);
  const std::size_t g[] = {0, 0, 0}, h[] = {0, 1, 1};
  CHECK(collisions(g, h) == 1);
}
