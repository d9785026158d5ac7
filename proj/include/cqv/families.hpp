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

// Controlled families of measurements and the equivalent ways of stating
// that a family is complementary.
//
// Index conventions used by every check in this file:
//   a, b : basis (control) labels, a classical system of size N = family.size()
//   i, j : outcomes of the measurements in bases a and b, size m = family.dim()
// Every complementarity tensor is laid out as (a, b, i, j).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqv/diagrams.hpp"
#include "cqv/numerics.hpp"

namespace cqv {

/// An m-dimensional Hilbert space with an ordered list of orthonormal bases.
/// Each basis is an m x m unitary whose columns are the basis vectors.
class ControlledFamily {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return bases_.size(); }
  const std::vector<ComplexMatrix>& bases() const { return bases_; }
  const ComplexMatrix& basis(std::size_t a) const { return bases_.at(a); }
  /// Basis vector i of basis a, as an m x 1 column.
  ComplexMatrix vector(std::size_t a, std::size_t i) const { return bases_.at(a).column_at(i); }

  ClassicalSystem basis_system() const { return {size(), "basis"}; }
  ClassicalSystem outcome_system() const { return {dim_, "outcome"}; }

 private:
  friend ControlledFamily make_family(std::size_t, std::vector<ComplexMatrix>, double);
  ControlledFamily(std::size_t dim, std::vector<ComplexMatrix> bases)
      : dim_(dim), bases_(std::move(bases)) {}

  std::size_t dim_;
  std::vector<ComplexMatrix> bases_;
};

/// Validates shapes and unitarity. Throws std::invalid_argument naming the
/// offending basis and its deviation.
ControlledFamily make_family(std::size_t dim, std::vector<ComplexMatrix> bases,
                             double tol = kDefaultTolerance);

/// Entrywise complex conjugate of every basis.
ControlledFamily conjugate_family(const ControlledFamily& f);

ComplexMatrix computational_basis(std::size_t m);
/// Columns (1/sqrt(m)) * exp(2 pi i x t / m).
ComplexMatrix fourier_basis(std::size_t m);

/// Measurement cell with indices (basis_name, outcome_name), quantum m -> 1.
/// The component at (a, i) is the row <a_i|, or <conj(a_i)| when conjugated.
IndexedTensor measurement_cell(const ControlledFamily& f, bool conjugated = false,
                               const std::string& basis_name = "a",
                               const std::string& outcome_name = "i");

/// Encoding cell, the dagger of the measurement cell: |a_i>, quantum 1 -> m.
IndexedTensor encoding_cell(const ControlledFamily& f, bool conjugated = false,
                            const std::string& basis_name = "a",
                            const std::string& outcome_name = "i");

/// Max over (i, j) of | |<a_i|b_j>|^2 - 1/m |. Throws on shape mismatch.
double unbiasedness_deviation(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t m);

bool is_unbiased_pair(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t m,
                      double tol = kDefaultTolerance);

enum class ComplementarityMethod { direct, eq10, alpha, reflected, controlled4 };

std::string_view method_name(ComplementarityMethod method);
std::optional<ComplementarityMethod> parse_method(std::string_view name);
inline constexpr ComplementarityMethod kAllMethods[] = {
    ComplementarityMethod::direct, ComplementarityMethod::eq10, ComplementarityMethod::alpha,
    ComplementarityMethod::reflected, ComplementarityMethod::controlled4};

struct ComplementarityReport {
  bool passed = false;
  ComplementarityMethod method = ComplementarityMethod::direct;
  std::optional<PhaseCell> extracted_phase;
  double worst_violation = 0.0;
  std::optional<NamedAssignment> witness;
};

/// Pairwise unbiasedness of all distinct bases.
ComplementarityReport is_complementary_direct(const ControlledFamily& f,
                                              double tol = kDefaultTolerance);

/// Left side of the doubled condition: measure in a (outcome i), copy, encode
/// in a, measure in b (outcome j). Components are <b_j|a_i><a_i|, quantum m -> 1.
IndexedTensor eq10_lhs(const ControlledFamily& f);
/// Template for the right side: <a_i| with the b and j regions created
/// uniformly, scaled by 1/sqrt(m).
IndexedTensor eq10_template(const ControlledFamily& f);

/// Passed iff on a != b the left side equals phi times the template with phi
/// unit-modulus. The report carries phi.
ComplementarityReport check_eq10(const ControlledFamily& f, double tol = kDefaultTolerance);

/// The 2-cell alpha: encode a_i, measure in b. Scalar components <b_j|a_i>.
IndexedTensor build_alpha(const ControlledFamily& f);

/// Passed iff sqrt(m) * alpha is unitary on the support of Pd(a, b), i.e.
/// every component of (sqrt(m) alpha)^dagger (sqrt(m) alpha) equals 1 there.
ComplementarityReport check_alpha_unitary(const ControlledFamily& f,
                                          double tol = kDefaultTolerance);

/// Horizontally reflected left side: encode b_j, measure in a, copy, encode
/// in a. Components |a_i><a_i|b_j>, quantum 1 -> m.
IndexedTensor reflected_lhs(const ControlledFamily& f);
IndexedTensor reflected_template(const ControlledFamily& f);

ComplementarityReport check_reflected(const ControlledFamily& f, double tol = kDefaultTolerance);

/// Substitutes conj(phi) into the reflected equation and reports the worst
/// deviation on the Pd support.
TensorComparison check_reflected_with_phase(const ControlledFamily& f, const PhaseCell& phi,
                                            double tol = kDefaultTolerance);

/// Four-vertex loop measure(a) -> encode(a) -> measure(b) -> encode(b), traced:
/// components |<a_i|b_j>|^2.
IndexedTensor controlled4_lhs(const ControlledFamily& f);
/// (1/m) times disconnected spiders over (a, b, i, j).
IndexedTensor controlled4_rhs(const ControlledFamily& f);

ComplementarityReport check_controlled4(const ControlledFamily& f,
                                        double tol = kDefaultTolerance);

ComplementarityReport check_complementarity(const ControlledFamily& f,
                                            ComplementarityMethod method,
                                            double tol = kDefaultTolerance);

/// Measure then re-encode in the same basis with the outcome region closed:
/// one component per basis, each should be the identity.
IndexedTensor completeness_tensor(const ControlledFamily& f);

/// Deterministic counterexample generator. Chooses (from a mt19937 stream
/// seeded with `seed`) a basis vector and a vector of a different basis, rotates
/// the first toward the second by `angle` radians, and re-orthonormalizes the
/// modified basis by Gram-Schmidt starting from the rotated vector.
/// Requires at least two bases.
ControlledFamily perturbed_family(const ControlledFamily& base, std::uint32_t seed,
                                  double angle = 0.1);

}  // namespace cqv
