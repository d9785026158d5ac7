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

// Concrete 2Hilb semantics for surface diagrams.
//
// A diagram with open classical regions evaluates to an IndexedTensor: one
// matrix per assignment of labels to the open regions, acting between the
// quantum wires that cross the diagram. Classical structure (copy, compare,
// create, delete) is a spider: a delta over all of its legs with weight 1.
// Closing a region sums over its labels.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqv/numerics.hpp"

namespace cqv {

/// A finite set of classical labels, {0, ..., size-1}.
struct ClassicalSystem {
  std::size_t size = 1;
  std::string name;

  friend bool operator==(const ClassicalSystem&, const ClassicalSystem&) = default;
};

/// An open classical boundary of a diagram.
struct TensorIndex {
  std::string name;
  ClassicalSystem system;

  friend bool operator==(const TensorIndex&, const TensorIndex&) = default;
};

using IndexSpec = std::vector<TensorIndex>;
using Assignment = std::vector<std::size_t>;
/// An assignment paired with the index names, for reports.
using NamedAssignment = std::vector<std::pair<std::string, std::size_t>>;

NamedAssignment name_assignment(const IndexSpec& spec, const Assignment& assignment);

/// Enumerates assignments of an index spec in row-major order (first index
/// varies slowest). A spec without indices has exactly one, empty, assignment.
class AssignmentSpace {
 public:
  explicit AssignmentSpace(const IndexSpec& spec);

  std::size_t size() const { return total_; }
  std::size_t rank() const { return sizes_.size(); }
  Assignment at(std::size_t flat) const;
  std::size_t flatten(const Assignment& assignment) const;
  std::size_t stride(std::size_t position) const { return strides_[position]; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

class IndexedTensor {
 public:
  using ComponentFn = std::function<ComplexMatrix(const Assignment&)>;

  /// Zero tensor. quantum_in / quantum_out are wire dimensions; 1 means no wire.
  IndexedTensor(IndexSpec spec, std::size_t quantum_in, std::size_t quantum_out);

  static IndexedTensor from_function(IndexSpec spec, std::size_t quantum_in,
                                     std::size_t quantum_out, const ComponentFn& fn);
  static IndexedTensor scalar(Complex value);
  /// A bare quantum wire of dimension m with no classical indices.
  static IndexedTensor identity(std::size_t m);

  const IndexSpec& index_spec() const { return spec_; }
  std::size_t quantum_in() const { return quantum_in_; }
  std::size_t quantum_out() const { return quantum_out_; }
  std::size_t rank() const { return spec_.size(); }
  std::size_t num_assignments() const { return components_.size(); }
  const AssignmentSpace& space() const { return space_; }

  bool has_index(std::string_view name) const;
  /// Position of a named index. Throws std::invalid_argument if absent.
  std::size_t position(std::string_view name) const;

  const ComplexMatrix& component(const Assignment& assignment) const;
  const ComplexMatrix& component_at(std::size_t flat) const { return components_[flat]; }
  /// Scalar value of a 1x1 component.
  Complex value(const Assignment& assignment) const;

  /// Replaces a component; throws if the shape differs from the declared one.
  void set_component(const Assignment& assignment, ComplexMatrix value);
  void set_component_at(std::size_t flat, ComplexMatrix value);

  /// Same indices (names, sizes and order) and the same quantum shape.
  bool same_shape(const IndexedTensor& other) const;

  /// "a=0, b=1" rendering of an assignment, used in diagnostics.
  std::string describe(const Assignment& assignment) const;

 private:
  IndexSpec spec_;
  std::size_t quantum_in_;
  std::size_t quantum_out_;
  AssignmentSpace space_;
  std::vector<ComplexMatrix> components_;
};

/// A unit-modulus scalar per assignment of classical boundaries. Values read
/// back from extract_phase may fail the unit-modulus condition; that is what
/// is_unit_modulus reports.
class PhaseCell {
 public:
  explicit PhaseCell(IndexSpec spec);
  PhaseCell(IndexSpec spec, std::vector<Complex> values);

  const IndexSpec& index_spec() const { return spec_; }
  const AssignmentSpace& space() const { return space_; }
  std::size_t size() const { return values_.size(); }

  Complex value(const Assignment& assignment) const;
  Complex value_at(std::size_t flat) const { return values_[flat]; }
  void set_value(const Assignment& assignment, Complex v);
  void set_value_at(std::size_t flat, Complex v) { values_[flat] = v; }

  bool is_unit_modulus(double tol = kDefaultTolerance) const;
  double max_modulus_deviation() const;

  /// The cell as a scalar-component IndexedTensor.
  IndexedTensor to_tensor() const;

 private:
  IndexSpec spec_;
  AssignmentSpace space_;
  std::vector<Complex> values_;
};

IndexedTensor tensor_add(const IndexedTensor& a, const IndexedTensor& b);
IndexedTensor tensor_scale(const IndexedTensor& a, Complex s);
/// Horizontal reflection: every component is replaced by its dagger.
IndexedTensor tensor_dagger(const IndexedTensor& a);
/// Mirror image about a vertical axis: entrywise conjugation.
IndexedTensor tensor_conjugate(const IndexedTensor& a);
/// Doubled (pure-to-mixed) form: every component M becomes kron(M, conj(M)).
IndexedTensor tensor_double(const IndexedTensor& a);

/// Vertical composition "first a, then b". Each pair (x, y) in shared
/// identifies index x of a with index y of b; the identified index keeps a's
/// name and stays open. The result lists a's indices followed by b's unshared
/// indices; every component is b(..) * a(..).
IndexedTensor compose_quantum(const IndexedTensor& a, const IndexedTensor& b,
                              const std::vector<std::pair<std::string, std::string>>& shared = {});

/// Parallel (monoidal) composition: disjoint indices, Kronecker product of
/// the quantum parts with a's wires first.
IndexedTensor tensor_product(const IndexedTensor& a, const IndexedTensor& b);

/// Closes a classical region: sums the components over the labels of `name`.
IndexedTensor sum_out(const IndexedTensor& t, std::string_view name);

/// Composes a then b along `shared` (see compose_quantum) and closes the
/// identified regions.
IndexedTensor contract(const IndexedTensor& a, const IndexedTensor& b,
                       const std::vector<std::pair<std::string, std::string>>& shared);

/// Joins the output wire back to the input wire (trace of every component).
IndexedTensor trace_quantum(const IndexedTensor& t);

/// Reorders indices; `order` must be a permutation of the index names.
IndexedTensor permute(const IndexedTensor& t, const std::vector<std::string>& order);

IndexedTensor rename(const IndexedTensor& t, std::string_view from, std::string to);

/// Multiplies each component by the phase of the matching assignment. The
/// phase cell's indices must all occur in t.
IndexedTensor apply_phase(const IndexedTensor& t, const PhaseCell& phase);

/// Spider on a classical region with legs named <region.name>0, <region.name>1, ...
/// With zero legs this is a closed classical sphere, the scalar region.size.
IndexedTensor spider(const ClassicalSystem& region, std::size_t legs);
IndexedTensor spider(const ClassicalSystem& region, const std::vector<std::string>& leg_names);

/// Classical function cell: delta(out, g(in)) over the two regions.
IndexedTensor function_cell(const TensorIndex& in, const TensorIndex& out,
                            const std::function<std::size_t(std::size_t)>& g);

/// Same-value projector on regions i and j.
IndexedTensor apply_ps(const IndexedTensor& t, std::string_view i, std::string_view j);
/// Different-value projector on regions i and j.
IndexedTensor apply_pd(const IndexedTensor& t, std::string_view i, std::string_view j);

struct TensorComparison {
  bool equal = false;
  double worst_deviation = 0.0;
  std::optional<Assignment> witness;  // worst assignment when !equal
};

TensorComparison tensors_equal(const IndexedTensor& a, const IndexedTensor& b,
                               double tol = kDefaultTolerance);

using SupportPredicate = std::function<bool(const Assignment&)>;

struct ProportionalityFailure {
  Assignment assignment;
  double residual = 0.0;
};

struct PhaseExtraction {
  PhaseCell phase;
  bool proportional = true;
  bool unit_modulus = true;
  double worst_residual = 0.0;
  double worst_modulus_deviation = 0.0;
  std::optional<Assignment> worst_modulus_assignment;
  std::vector<ProportionalityFailure> failures;  // sorted by assignment

  bool passed() const { return proportional && unit_modulus; }
  double worst_violation() const { return std::max(worst_residual, worst_modulus_deviation); }
};

/// For each assignment in the support, finds the least-squares scalar s with
/// lhs = s * tmpl and checks the residual against tol. Outside the support
/// the phase is set to 1. A zero template component is only proportional to
/// a zero lhs component.
PhaseExtraction extract_phase(const IndexedTensor& lhs, const IndexedTensor& tmpl,
                              const SupportPredicate& support, double tol = kDefaultTolerance);

/// Support predicate selecting assignments where two named indices differ.
SupportPredicate different_values(const IndexSpec& spec, std::string_view i, std::string_view j);

}  // namespace cqv
