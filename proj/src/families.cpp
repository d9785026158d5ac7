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

#include "cqv/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cqv {

namespace {

constexpr std::string_view kMethodNames[] = {"direct", "eq10", "alpha", "reflected",
                                             "controlled4"};

/// Ones over the given indices: disconnected one-legged spiders (create/delete).
IndexedTensor uniform(const IndexSpec& spec) {
  return IndexedTensor::from_function(spec, 1, 1,
                                      [](const Assignment&) { return ComplexMatrix::scalar(1.0); });
}

std::vector<std::string> abij() { return {"a", "b", "i", "j"}; }

/// Measure in a, copy the outcome, encode it again in a: |a_i><a_i| over (a, i).
IndexedTensor measure_copy_encode(const ControlledFamily& f) {
  return compose_quantum(measurement_cell(f), encoding_cell(f), {{"a", "a"}, {"i", "i"}});
}

ComplementarityReport from_extraction(ComplementarityMethod method, const IndexSpec& spec,
                                      PhaseExtraction&& ex) {
  ComplementarityReport r;
  r.method = method;
  r.passed = ex.passed();
  r.worst_violation = ex.worst_violation();
  if (!ex.failures.empty()) {
    r.witness = name_assignment(spec, ex.failures.front().assignment);
  } else if (!ex.unit_modulus && ex.worst_modulus_assignment) {
    r.witness = name_assignment(spec, *ex.worst_modulus_assignment);
  }
  r.extracted_phase = std::move(ex.phase);
  return r;
}

ComplementarityReport from_comparison(ComplementarityMethod method, const IndexSpec& spec,
                                      const TensorComparison& cmp) {
  ComplementarityReport r;
  r.method = method;
  r.passed = cmp.equal;
  r.worst_violation = cmp.worst_deviation;
  if (cmp.witness) r.witness = name_assignment(spec, *cmp.witness);
  return r;
}

}  // namespace

ControlledFamily make_family(std::size_t dim, std::vector<ComplexMatrix> bases, double tol) {
  if (dim == 0) throw std::invalid_argument("make_family: dimension must be positive");
  if (bases.empty()) throw std::invalid_argument("make_family: at least one basis is required");
  for (std::size_t a = 0; a < bases.size(); ++a) {
    const auto& b = bases[a];
    if (b.rows() != dim || b.cols() != dim) {
      throw std::invalid_argument("make_family: basis " + std::to_string(a) + " has shape " +
                                  b.shape_string() + ", expected " + std::to_string(dim) + "x" +
                                  std::to_string(dim));
    }
    const double dev = unitarity_deviation(b);
    if (dev > tol) {
      std::ostringstream os;
      os << "make_family: basis " << a << " is not unitary (deviation " << dev << ")";
      throw std::invalid_argument(os.str());
    }
  }
  return ControlledFamily(dim, std::move(bases));
}

ControlledFamily conjugate_family(const ControlledFamily& f) {
  std::vector<ComplexMatrix> bases;
  for (const auto& b : f.bases()) bases.push_back(conjugate(b));
  return make_family(f.dim(), std::move(bases));
}

ComplexMatrix computational_basis(std::size_t m) { return ComplexMatrix::identity(m); }

ComplexMatrix fourier_basis(std::size_t m) {
  ComplexMatrix out(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t t = 0; t < m; ++t) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((x * t) % m) /
                           static_cast<double>(m);
      out(x, t) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  }
  return out;
}

IndexedTensor measurement_cell(const ControlledFamily& f, bool conjugated,
                               const std::string& basis_name, const std::string& outcome_name) {
  IndexSpec spec{{basis_name, f.basis_system()}, {outcome_name, f.outcome_system()}};
  return IndexedTensor::from_function(spec, f.dim(), 1, [&](const Assignment& a) {
    const ComplexMatrix v = f.vector(a[0], a[1]);
    return conjugated ? ComplexMatrix(ComplexMatrix::Storage(v.eigen().transpose()))
                      : dagger(v);
  });
}

IndexedTensor encoding_cell(const ControlledFamily& f, bool conjugated,
                            const std::string& basis_name, const std::string& outcome_name) {
  return tensor_dagger(measurement_cell(f, conjugated, basis_name, outcome_name));
}

double unbiasedness_deviation(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t m) {
  if (a.rows() != m || a.cols() != m || b.rows() != m || b.cols() != m) {
    throw std::invalid_argument("is_unbiased_pair: expected two " + std::to_string(m) + "x" +
                                std::to_string(m) + " matrices, got " + a.shape_string() +
                                " and " + b.shape_string());
  }
  const ComplexMatrix overlaps = matmul(dagger(a), b);
  const double target = 1.0 / static_cast<double>(m);
  double worst = 0.0;
  for (const auto& z : overlaps.entries()) worst = std::max(worst, std::abs(std::norm(z) - target));
  return worst;
}

bool is_unbiased_pair(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t m, double tol) {
  return unbiasedness_deviation(a, b, m) <= tol;
}

std::string_view method_name(ComplementarityMethod method) {
  return kMethodNames[static_cast<std::size_t>(method)];
}

std::optional<ComplementarityMethod> parse_method(std::string_view name) {
  for (std::size_t k = 0; k < std::size(kMethodNames); ++k) {
    if (kMethodNames[k] == name) return static_cast<ComplementarityMethod>(k);
  }
  return std::nullopt;
}

ComplementarityReport is_complementary_direct(const ControlledFamily& f, double tol) {
  ComplementarityReport r;
  r.method = ComplementarityMethod::direct;
  const std::size_t m = f.dim();
  const double target = 1.0 / static_cast<double>(m);
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      const ComplexMatrix overlaps = matmul(dagger(f.basis(a)), f.basis(b));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const double dev = std::abs(std::norm(overlaps(i, j)) - target);
          if (dev > r.worst_violation) {
            r.worst_violation = dev;
            r.witness = NamedAssignment{{"a", a}, {"b", b}, {"i", i}, {"j", j}};
          }
        }
      }
    }
  }
  r.passed = r.worst_violation <= tol;
  if (r.passed) r.witness.reset();
  return r;
}

IndexedTensor eq10_lhs(const ControlledFamily& f) {
  const IndexedTensor second = measurement_cell(f, false, "b", "j");
  return permute(compose_quantum(measure_copy_encode(f), second), abij());
}

IndexedTensor eq10_template(const ControlledFamily& f) {
  const IndexedTensor created =
      tensor_product(spider(f.basis_system(), {"b"}), spider(f.outcome_system(), {"j"}));
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.dim()));
  return permute(tensor_scale(tensor_product(measurement_cell(f), created), scale), abij());
}

ComplementarityReport check_eq10(const ControlledFamily& f, double tol) {
  const IndexedTensor lhs = apply_pd(eq10_lhs(f), "a", "b");
  const IndexedTensor tmpl = apply_pd(eq10_template(f), "a", "b");
  return from_extraction(ComplementarityMethod::eq10, lhs.index_spec(),
                         extract_phase(lhs, tmpl, different_values(lhs.index_spec(), "a", "b"),
                                       tol));
}

IndexedTensor build_alpha(const ControlledFamily& f) {
  return permute(compose_quantum(encoding_cell(f), measurement_cell(f, false, "b", "j")),
                 abij());
}

ComplementarityReport check_alpha_unitary(const ControlledFamily& f, double tol) {
  const IndexedTensor alpha =
      tensor_scale(build_alpha(f), std::sqrt(static_cast<double>(f.dim())));
  const IndexedTensor gram = compose_quantum(alpha, tensor_dagger(alpha),
                                             {{"a", "a"}, {"b", "b"}, {"i", "i"}, {"j", "j"}});
  const IndexedTensor lhs = apply_pd(gram, "a", "b");
  const IndexedTensor rhs = apply_pd(uniform(gram.index_spec()), "a", "b");
  return from_comparison(ComplementarityMethod::alpha, lhs.index_spec(),
                         tensors_equal(lhs, rhs, tol));
}

IndexedTensor reflected_lhs(const ControlledFamily& f) {
  const IndexedTensor prepared =
      compose_quantum(encoding_cell(f, false, "b", "j"), measurement_cell(f));
  return permute(compose_quantum(prepared, encoding_cell(f), {{"a", "a"}, {"i", "i"}}), abij());
}

IndexedTensor reflected_template(const ControlledFamily& f) {
  const IndexedTensor created =
      tensor_product(spider(f.basis_system(), {"b"}), spider(f.outcome_system(), {"j"}));
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.dim()));
  return permute(tensor_scale(tensor_product(encoding_cell(f), created), scale), abij());
}

ComplementarityReport check_reflected(const ControlledFamily& f, double tol) {
  const IndexedTensor lhs = apply_pd(reflected_lhs(f), "a", "b");
  const IndexedTensor tmpl = apply_pd(reflected_template(f), "a", "b");
  return from_extraction(ComplementarityMethod::reflected, lhs.index_spec(),
                         extract_phase(lhs, tmpl, different_values(lhs.index_spec(), "a", "b"),
                                       tol));
}

TensorComparison check_reflected_with_phase(const ControlledFamily& f, const PhaseCell& phi,
                                            double tol) {
  std::vector<Complex> conj_values;
  for (std::size_t k = 0; k < phi.size(); ++k) conj_values.push_back(std::conj(phi.value_at(k)));
  const PhaseCell phi_dagger(phi.index_spec(), std::move(conj_values));
  const IndexedTensor lhs = apply_pd(reflected_lhs(f), "a", "b");
  const IndexedTensor rhs = apply_pd(apply_phase(reflected_template(f), phi_dagger), "a", "b");
  return tensors_equal(lhs, rhs, tol);
}

IndexedTensor controlled4_lhs(const ControlledFamily& f) {
  const IndexedTensor three = compose_quantum(measure_copy_encode(f),
                                              measurement_cell(f, false, "b", "j"));
  const IndexedTensor four =
      compose_quantum(three, encoding_cell(f, false, "b", "j"), {{"b", "b"}, {"j", "j"}});
  return permute(trace_quantum(four), abij());
}

IndexedTensor controlled4_rhs(const ControlledFamily& f) {
  const IndexSpec spec{{"a", f.basis_system()},
                       {"b", f.basis_system()},
                       {"i", f.outcome_system()},
                       {"j", f.outcome_system()}};
  return tensor_scale(uniform(spec), 1.0 / static_cast<double>(f.dim()));
}

ComplementarityReport check_controlled4(const ControlledFamily& f, double tol) {
  const IndexedTensor lhs = apply_pd(controlled4_lhs(f), "a", "b");
  const IndexedTensor rhs = apply_pd(controlled4_rhs(f), "a", "b");
  return from_comparison(ComplementarityMethod::controlled4, lhs.index_spec(),
                         tensors_equal(lhs, rhs, tol));
}

ComplementarityReport check_complementarity(const ControlledFamily& f,
                                            ComplementarityMethod method, double tol) {
  switch (method) {
    case ComplementarityMethod::direct:
      return is_complementary_direct(f, tol);
    case ComplementarityMethod::eq10:
      return check_eq10(f, tol);
    case ComplementarityMethod::alpha:
      return check_alpha_unitary(f, tol);
    case ComplementarityMethod::reflected:
      return check_reflected(f, tol);
    case ComplementarityMethod::controlled4:
      return check_controlled4(f, tol);
  }
  throw std::logic_error("check_complementarity: unknown method");
}

IndexedTensor completeness_tensor(const ControlledFamily& f) {
  return sum_out(measure_copy_encode(f), "i");
}

ControlledFamily perturbed_family(const ControlledFamily& base, std::uint32_t seed,
                                  double angle) {
  if (base.size() < 2) {
    throw std::invalid_argument("perturbed_family: need at least two bases");
  }
  std::mt19937 rng(seed);
  const std::size_t n = base.size();
  const std::size_t m = base.dim();
  const std::size_t a = rng() % n;
  const std::size_t i = rng() % m;
  const std::size_t b = (a + 1 + rng() % (n - 1)) % n;
  const std::size_t j = rng() % m;

  using Vec = Eigen::VectorXcd;
  const auto& A = base.basis(a).eigen();
  std::vector<Vec> vecs;
  vecs.push_back(std::cos(angle) * Vec(A.col(static_cast<Eigen::Index>(i))) +
                 std::sin(angle) * Vec(base.basis(b).eigen().col(static_cast<Eigen::Index>(j))));
  for (std::size_t c = 0; c < m; ++c) {
    if (c != i) vecs.push_back(A.col(static_cast<Eigen::Index>(c)));
  }
  for (std::size_t p = 0; p < vecs.size(); ++p) {
    for (std::size_t q = 0; q < p; ++q) vecs[p] -= vecs[q].dot(vecs[p]) * vecs[q];
    vecs[p].normalize();
  }
  ComplexMatrix::Storage rotated(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  // The rotated vector keeps its slot; the rest keep their relative order.
  rotated.col(static_cast<Eigen::Index>(i)) = vecs[0];
  std::size_t next = 1;
  for (std::size_t c = 0; c < m; ++c) {
    if (c != i) rotated.col(static_cast<Eigen::Index>(c)) = vecs[next++];
  }
  std::vector<ComplexMatrix> bases = base.bases();
  bases[a] = ComplexMatrix(std::move(rotated));
  return make_family(m, std::move(bases));
}

}  // namespace cqv
