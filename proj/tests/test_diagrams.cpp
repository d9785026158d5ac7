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

#include "cqv/diagrams.hpp"
#include "support/oracles.hpp"

using namespace cqv;

namespace {

const Complex I(0.0, 1.0);

IndexedTensor random_tensor(std::mt19937& rng, IndexSpec spec, std::size_t qin, std::size_t qout) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return IndexedTensor::from_function(std::move(spec), qin, qout, [&](const Assignment&) {
    ComplexMatrix m(qout, qin);
    for (std::size_t r = 0; r < qout; ++r)
      for (std::size_t c = 0; c < qin; ++c) m(r, c) = Complex(u(rng), u(rng));
    return m;
  });
}

}  // namespace

TEST_CASE("assignment space is row-major with the first index slowest") {
  const IndexSpec spec{{"a", {2, "A"}}, {"b", {3, "B"}}};
  const AssignmentSpace space(spec);
  CHECK(space.size() == 6);
  CHECK(space.at(0) == Assignment{0, 0});
  CHECK(space.at(1) == Assignment{0, 1});
  CHECK(space.at(3) == Assignment{1, 0});
  for (std::size_t k = 0; k < space.size(); ++k) CHECK(space.flatten(space.at(k)) == k);
  CHECK_THROWS(space.flatten({2, 0}));
}

TEST_CASE("spider with no legs is the region size") {
  const auto s = spider(ClassicalSystem{3, "X"}, 0);
  CHECK(s.rank() == 0);
  CHECK(s.value({}) == Complex(3.0));
}

TEST_CASE("spider is a delta on its legs") {
  const ClassicalSystem x{3, "X"};
  const auto s = spider(x, 3);
  for (std::size_t k = 0; k < s.num_assignments(); ++k) {
    const Assignment a = s.space().at(k);
    const bool equal = a[0] == a[1] && a[1] == a[2];
    CHECK(s.value(a) == Complex(equal ? 1.0 : 0.0));
  }
}

TEST_CASE("spider fusion") {
  const ClassicalSystem x{4, "X"};
  const auto left = spider(x, std::vector<std::string>{"p", "q", "y"});
  const auto right = spider(x, std::vector<std::string>{"y2", "r"});
  const auto fused = contract(left, right, {{"y", "y2"}});
  const auto direct = spider(x, std::vector<std::string>{"p", "q", "r"});
  CHECK(tensors_equal(fused, direct, 0.0).equal);

  // A loop through two two-legged spiders counts the region.
  const auto loop = sum_out(sum_out(contract(spider(x, std::vector<std::string>{"u", "v"}),
                                             spider(x, std::vector<std::string>{"u2", "v2"}),
                                             {{"u", "u2"}}),
                                    "v"),
                            "v2");
  CHECK(loop.rank() == 0);
  CHECK(loop.value({}) == Complex(4.0));
}

TEST_CASE("contraction agrees with an exhaustive sum") {
  std::mt19937 rng(3);
  const ClassicalSystem X{2, "X"}, Y{3, "Y"}, Z{2, "Z"};
  const auto a = random_tensor(rng, {{"x", X}, {"y", Y}}, 2, 3);
  const auto b = random_tensor(rng, {{"y", Y}, {"z", Z}}, 3, 2);
  const auto c = contract(a, b, {{"y", "y"}});
  REQUIRE(c.index_spec().size() == 2);
  CHECK(c.index_spec()[0].name == "x");
  CHECK(c.index_spec()[1].name == "z");
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t z = 0; z < 2; ++z) {
      oracle::Dense acc(2, std::vector<Complex>(2));
      for (std::size_t y = 0; y < 3; ++y) {
        const auto p = oracle::naive_matmul(oracle::to_dense(b.component({y, z})),
                                            oracle::to_dense(a.component({x, y})));
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t s = 0; s < 2; ++s) acc[r][s] += p[r][s];
      }
      CHECK(oracle::dense_diff(c.component({x, z}), acc) < 1e-12);
    }
  }
}

TEST_CASE("tensor product is kron of components") {
  std::mt19937 rng(5);
  const auto a = random_tensor(rng, {{"x", {2, "X"}}}, 2, 1);
  const auto b = random_tensor(rng, {{"y", {3, "Y"}}}, 1, 2);
  const auto t = tensor_product(a, b);
  CHECK(t.quantum_in() == 2);
  CHECK(t.quantum_out() == 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 3; ++y) {
      const auto expected = oracle::naive_kron(oracle::to_dense(a.component({x})),
                                               oracle::to_dense(b.component({y})));
      CHECK(oracle::dense_diff(t.component({x, y}), expected) < 1e-14);
    }
  CHECK_THROWS_AS(tensor_product(a, a), std::invalid_argument);
}

TEST_CASE("compose rejects mismatched wires") {
  const auto a = IndexedTensor::identity(2);
  const auto b = IndexedTensor::identity(3);
  CHECK_THROWS_AS(compose_quantum(a, b), std::invalid_argument);
}

TEST_CASE("dagger, conjugate and double") {
  std::mt19937 rng(11);
  const auto a = random_tensor(rng, {{"x", {2, "X"}}}, 2, 3);
  const auto d = tensor_dagger(a);
  CHECK(d.quantum_in() == 3);
  CHECK(tensors_equal(tensor_dagger(d), a, 0.0).equal);
  CHECK(tensors_equal(tensor_conjugate(tensor_conjugate(a)), a, 0.0).equal);
  const auto dbl = tensor_double(a);
  CHECK(dbl.quantum_in() == 4);
  CHECK(dbl.quantum_out() == 9);
  for (std::size_t x = 0; x < 2; ++x) {
    const auto expected = oracle::naive_kron(oracle::to_dense(conjugate(a.component({x}))),
                                             oracle::to_dense(a.component({x})));
    const auto alt = oracle::naive_kron(oracle::to_dense(a.component({x})),
                                        oracle::to_dense(conjugate(a.component({x}))));
    const double e1 = oracle::dense_diff(dbl.component({x}), expected);
    const double e2 = oracle::dense_diff(dbl.component({x}), alt);
    CHECK(std::min(e1, e2) < 1e-14);
  }
}

TEST_CASE("permute and rename") {
  std::mt19937 rng(13);
  const auto a = random_tensor(rng, {{"x", {2, "X"}}, {"y", {3, "Y"}}}, 1, 1);
  const auto p = permute(a, {"y", "x"});
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 3; ++y) CHECK(p.value({y, x}) == a.value({x, y}));
  CHECK(tensors_equal(permute(p, {"x", "y"}), a, 0.0).equal);
  const auto r = rename(a, "x", "w");
  CHECK(r.has_index("w"));
  CHECK_FALSE(r.has_index("x"));
  CHECK_THROWS(permute(a, {"x", "x"}));
  CHECK_THROWS(a.position("nope"));
}

TEST_CASE("trace of the identity wire") {
  CHECK(trace_quantum(IndexedTensor::identity(5)).value({}) == Complex(5.0));
}

TEST_CASE("Ps and Pd split a tensor") {
  std::mt19937 rng(17);
  const ClassicalSystem X{3, "X"};
  const auto a = random_tensor(rng, {{"i", X}, {"j", X}}, 1, 2);
  const auto split = tensor_add(apply_ps(a, "i", "j"), apply_pd(a, "i", "j"));
  CHECK(tensors_equal(split, a, 0.0).equal);
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_abs(apply_pd(a, "i", "j").component({i, i})) == 0.0);
  const auto mixed = random_tensor(rng, {{"i", X}, {"k", {2, "K"}}}, 1, 1);
  CHECK_THROWS_AS(apply_ps(mixed, "i", "k"), std::invalid_argument);
}

TEST_CASE("function cell composes like the function") {
  const TensorIndex in{"c", {4, "C"}};
  const TensorIndex mid{"d", {3, "D"}};
  const TensorIndex out{"e", {3, "E"}};
  auto g = [](std::size_t c) { return (2 * c + 1) % 3; };
  auto h = [](std::size_t d) { return (d * d) % 3; };
  const auto composite = contract(function_cell(in, mid, g), function_cell({"d", {3, "D"}}, out, h),
                                  {{"d", "d"}});
  const auto direct = function_cell(in, out, [&](std::size_t c) { return h(g(c)); });
  CHECK(tensors_equal(composite, direct, 0.0).equal);
  CHECK_THROWS(function_cell(in, mid, [](std::size_t) { return std::size_t{7}; }));
}

TEST_CASE("phase extraction recovers a planted phase") {
  std::mt19937 rng(23);
  const ClassicalSystem X{3, "X"};
  const IndexSpec spec{{"i", X}, {"j", X}};
  const auto tmpl = random_tensor(rng, spec, 1, 2);
  PhaseCell planted(spec);
  std::uniform_real_distribution<double> u(0.0, 6.28);
  for (std::size_t k = 0; k < planted.size(); ++k) planted.set_value_at(k, std::polar(1.0, u(rng)));
  const auto lhs = apply_phase(tmpl, planted);
  const auto support = different_values(spec, "i", "j");
  const auto res = extract_phase(lhs, tmpl, support);
  CHECK(res.passed());
  for (std::size_t k = 0; k < planted.size(); ++k) {
    if (!support(planted.space().at(k))) continue;
    CHECK(std::abs(res.phase.value_at(k) - planted.value_at(k)) < 1e-12);
  }

  // Scaling one component by 2 breaks the modulus, mixing two breaks proportionality.
  auto bad = lhs;
  bad.set_component({0, 1}, 2.0 * lhs.component({0, 1}));
  auto r2 = extract_phase(bad, tmpl, support);
  CHECK(r2.proportional);
  CHECK_FALSE(r2.unit_modulus);
  REQUIRE(r2.worst_modulus_assignment);
  CHECK(*r2.worst_modulus_assignment == Assignment{0, 1});
  auto skew = lhs;
  skew.set_component({1, 2}, lhs.component({2, 1}));
  CHECK_FALSE(extract_phase(skew, tmpl, support).proportional);
}

TEST_CASE("phase cells") {
  const IndexSpec spec{{"i", {2, "X"}}};
  const PhaseCell p(spec, {1.0, I});
  CHECK(p.is_unit_modulus());
  CHECK(p.max_modulus_deviation() < 1e-15);
  CHECK(p.to_tensor().value({1}) == I);
  const PhaseCell q(spec, {1.0, 0.5});
  CHECK_FALSE(q.is_unit_modulus());
  CHECK_THROWS(PhaseCell(spec, {1.0}));
}

TEST_CASE("tensors_equal reports a witness") {
  const ClassicalSystem X{2, "X"};
  const auto a = spider(X, 2);
  auto b = a;
  b.set_component({1, 0}, ComplexMatrix::scalar(0.25));
  const auto cmp = tensors_equal(a, b);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.worst_deviation == Catch::Approx(0.25));
  REQUIRE(cmp.witness);
  CHECK(*cmp.witness == Assignment{1, 0});
}

TEST_CASE("add zero, scale by one and by zero") {
  std::mt19937 rng(41);
  const IndexSpec spec{{"x", {3, "X"}}};
  const auto t = random_tensor(rng, spec, 2, 2);
  CHECK(tensors_equal(tensor_add(t, IndexedTensor(spec, 2, 2)), t, 0.0).equal);
  CHECK(tensors_equal(tensor_scale(t, 1.0), t, 0.0).equal);
  CHECK(tensors_equal(tensor_scale(t, 0.0), IndexedTensor(spec, 2, 2), 0.0).equal);
  const auto u = random_tensor(rng, spec, 2, 2);
  const auto sum = tensor_add(t, u);
  for (std::size_t x = 0; x < 3; ++x) CHECK(max_abs_diff(sum.component({x}), t.component({x}) + u.component({x})) == 0.0);
  CHECK(tensors_equal(compose_quantum(t, IndexedTensor::identity(2)), t, 0.0).equal);
  CHECK(tensors_equal(compose_quantum(IndexedTensor::identity(2), t), t, 0.0).equal);
}

TEST_CASE("encode then measure in one basis is a delta on outcomes") {
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix H{{h, h}, {h, -h}};
  const IndexSpec spec{{"a", {2, "basis"}}, {"i", {2, "outcome"}}};
  const IndexSpec spec_j{{"a", {2, "basis"}}, {"j", {2, "outcome"}}};
  const std::vector<ComplexMatrix> bases{ComplexMatrix::identity(2), H};
  const auto encode = IndexedTensor::from_function(spec, 1, 2, [&](const Assignment& x) {
    return bases[x[0]].column_at(x[1]);
  });
  const auto measure = IndexedTensor::from_function(spec_j, 2, 1, [&](const Assignment& x) {
    return dagger(bases[x[0]].column_at(x[1]));
  });
  const auto loop = compose_quantum(encode, measure, {{"a", "a"}});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(loop.value({a, i, j}) - Complex(i == j ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("spider examples") {
  const ClassicalSystem two{2, "T"};
  const auto s = spider(two, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(s.value({i, j}) == Complex(i == j ? 1.0 : 0.0));

  // Two one-legged spiders joined and summed: the empty spider.
  const ClassicalSystem three{3, "X"};
  const auto joined = contract(spider(three, std::vector<std::string>{"u"}),
                                spider(three, std::vector<std::string>{"u"}), {{"u", "u"}});
  CHECK(tensors_equal(joined, spider(three, 0), 0.0).equal);

  for (std::size_t n : {2u, 3u}) {
    const ClassicalSystem x{n, "X"};
    const auto fused = contract(spider(x, std::vector<std::string>{"p", "q", "y"}),
                                spider(x, std::vector<std::string>{"y", "r", "s"}), {{"y", "y"}});
    CHECK(tensors_equal(fused, spider(x, std::vector<std::string>{"p", "q", "r", "s"}), 0.0).equal);
  }
}

TEST_CASE("projector algebra") {
  std::mt19937 rng(43);
  const ClassicalSystem X{3, "X"};
  const IndexSpec spec{{"i", X}, {"j", X}};
  const auto t = random_tensor(rng, spec, 2, 1);
  const IndexedTensor zero(spec, 2, 1);
  CHECK(tensors_equal(apply_ps(apply_ps(t, "i", "j"), "i", "j"), apply_ps(t, "i", "j"), 0.0).equal);
  CHECK(tensors_equal(apply_pd(apply_pd(t, "i", "j"), "i", "j"), apply_pd(t, "i", "j"), 0.0).equal);
  CHECK(tensors_equal(apply_ps(apply_pd(t, "i", "j"), "i", "j"), zero, 0.0).equal);
  CHECK(tensors_equal(apply_pd(apply_ps(t, "i", "j"), "i", "j"), zero, 0.0).equal);
  const auto diag = apply_ps(t, "i", "j");
  CHECK(tensors_equal(apply_ps(diag, "i", "j"), diag, 0.0).equal);
  CHECK(tensors_equal(apply_pd(diag, "i", "j"), zero, 0.0).equal);
}

TEST_CASE("tensors_equal at the tolerance boundary") {
  std::mt19937 rng(47);
  const IndexSpec spec{{"x", {2, "X"}}};
  const auto t = random_tensor(rng, spec, 2, 2);
  CHECK(tensors_equal(t, t).equal);
  const auto doubled = tensor_scale(t, 2.0);
  const auto cmp = tensors_equal(t, doubled);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.witness);
  const double tol = 1e-6;
  auto nudge = [&](double by) {
    auto u = t;
    ComplexMatrix c = u.component({1});
    c(0, 1) += by;
    u.set_component({1}, c);
    return u;
  };
  CHECK(tensors_equal(t, nudge(tol / 2), tol).equal);
  const auto far = tensors_equal(t, nudge(2 * tol), tol);
  CHECK_FALSE(far.equal);
  REQUIRE(far.witness);
  CHECK(*far.witness == Assignment{1});
}

TEST_CASE("phase extraction on equal tensors and a named failure") {
  std::mt19937 rng(53);
  const ClassicalSystem X{3, "X"};
  const IndexSpec spec{{"i", X}, {"j", X}};
  const auto t = random_tensor(rng, spec, 2, 2);
  const auto all = [](const Assignment&) { return true; };
  const auto same = extract_phase(t, t, all);
  CHECK(same.passed());
  for (std::size_t k = 0; k < same.phase.size(); ++k) CHECK(std::abs(same.phase.value_at(k) - 1.0) < 1e-12);

  auto broken = t;
  broken.set_component({2, 0}, random_tensor(rng, spec, 2, 2).component({0, 0}));
  const auto res = extract_phase(broken, t, all);
  CHECK_FALSE(res.proportional);
  REQUIRE(res.failures.size() == 1);
  CHECK(res.failures.front().assignment == Assignment{2, 0});
}
