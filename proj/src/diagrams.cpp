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

#include "cqv/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cqv {

namespace {

std::string spec_string(const IndexSpec& spec) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i > 0) os << ", ";
    os << spec[i].name << ":" << spec[i].system.size;
  }
  os << ")";
  return os.str();
}

std::size_t find_position(const IndexSpec& spec, std::string_view name) {
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i].name == name) return i;
  }
  throw std::invalid_argument("no classical index named '" + std::string(name) + "' in " +
                              spec_string(spec));
}

void require_same_shape(const IndexedTensor& a, const IndexedTensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(op) + ": tensor specs differ: " +
                                spec_string(a.index_spec()) + " " +
                                std::to_string(a.quantum_out()) + "x" +
                                std::to_string(a.quantum_in()) + " vs " +
                                spec_string(b.index_spec()) + " " +
                                std::to_string(b.quantum_out()) + "x" +
                                std::to_string(b.quantum_in()));
  }
}

template <typename Fn>
IndexedTensor map_components(const IndexedTensor& t, std::size_t qin, std::size_t qout,
                             Fn&& fn) {
  IndexedTensor out(t.index_spec(), qin, qout);
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    out.set_component_at(k, fn(t.component_at(k)));
  }
  return out;
}

void require_matching_pair(const IndexedTensor& t, std::string_view i, std::string_view j,
                           const char* op) {
  const auto pi = t.position(i);
  const auto pj = t.position(j);
  if (pi == pj) {
    throw std::invalid_argument(std::string(op) + ": indices must be distinct");
  }
  if (t.index_spec()[pi].system.size != t.index_spec()[pj].system.size) {
    throw std::invalid_argument(std::string(op) + ": indices '" + std::string(i) + "' and '" +
                                std::string(j) + "' have different sizes");
  }
}

}  // namespace

NamedAssignment name_assignment(const IndexSpec& spec, const Assignment& assignment) {
  NamedAssignment out;
  for (std::size_t i = 0; i < spec.size() && i < assignment.size(); ++i) {
    out.emplace_back(spec[i].name, assignment[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// AssignmentSpace

AssignmentSpace::AssignmentSpace(const IndexSpec& spec) {
  sizes_.reserve(spec.size());
  for (const auto& idx : spec) {
    if (idx.system.size == 0) {
      throw std::invalid_argument("classical system '" + idx.system.name +
                                  "' must have at least one label");
    }
    sizes_.push_back(idx.system.size);
  }
  strides_.assign(sizes_.size(), 1);
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    strides_[i] = total_;
    total_ *= sizes_[i];
  }
}

Assignment AssignmentSpace::at(std::size_t flat) const {
  Assignment out(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    out[i] = (flat / strides_[i]) % sizes_[i];
  }
  return out;
}

std::size_t AssignmentSpace::flatten(const Assignment& assignment) const {
  if (assignment.size() != sizes_.size()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " labels, expected " + std::to_string(sizes_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (assignment[i] >= sizes_[i]) {
      throw std::out_of_range("label " + std::to_string(assignment[i]) +
                              " out of range for index of size " + std::to_string(sizes_[i]));
    }
    flat += assignment[i] * strides_[i];
  }
  return flat;
}

// ---------------------------------------------------------------------------
// IndexedTensor

IndexedTensor::IndexedTensor(IndexSpec spec, std::size_t quantum_in, std::size_t quantum_out)
    : spec_(std::move(spec)),
      quantum_in_(quantum_in),
      quantum_out_(quantum_out),
      space_(spec_) {
  if (quantum_in_ == 0 || quantum_out_ == 0) {
    throw std::invalid_argument("IndexedTensor: quantum dimensions must be positive");
  }
  std::set<std::string> names;
  for (const auto& idx : spec_) {
    if (!names.insert(idx.name).second) {
      throw std::invalid_argument("IndexedTensor: duplicate index name '" + idx.name + "'");
    }
  }
  components_.assign(space_.size(), ComplexMatrix(quantum_out_, quantum_in_));
}

IndexedTensor IndexedTensor::from_function(IndexSpec spec, std::size_t quantum_in,
                                           std::size_t quantum_out, const ComponentFn& fn) {
  IndexedTensor t(std::move(spec), quantum_in, quantum_out);
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    t.set_component_at(k, fn(t.space_.at(k)));
  }
  return t;
}

IndexedTensor IndexedTensor::scalar(Complex value) {
  IndexedTensor t({}, 1, 1);
  t.components_[0] = ComplexMatrix::scalar(value);
  return t;
}

IndexedTensor IndexedTensor::identity(std::size_t m) {
  IndexedTensor t({}, m, m);
  t.components_[0] = ComplexMatrix::identity(m);
  return t;
}

bool IndexedTensor::has_index(std::string_view name) const {
  return std::any_of(spec_.begin(), spec_.end(),
                     [&](const TensorIndex& idx) { return idx.name == name; });
}

std::size_t IndexedTensor::position(std::string_view name) const {
  return find_position(spec_, name);
}

const ComplexMatrix& IndexedTensor::component(const Assignment& assignment) const {
  return components_[space_.flatten(assignment)];
}

Complex IndexedTensor::value(const Assignment& assignment) const {
  const auto& c = component(assignment);
  if (c.rows() != 1 || c.cols() != 1) {
    throw std::logic_error("IndexedTensor::value: component is " + c.shape_string() +
                           ", not a scalar");
  }
  return c(0, 0);
}

void IndexedTensor::set_component(const Assignment& assignment, ComplexMatrix value) {
  set_component_at(space_.flatten(assignment), std::move(value));
}

void IndexedTensor::set_component_at(std::size_t flat, ComplexMatrix value) {
  if (value.rows() != quantum_out_ || value.cols() != quantum_in_) {
    throw std::invalid_argument("IndexedTensor: component of shape " + value.shape_string() +
                                " does not match declared " + std::to_string(quantum_out_) +
                                "x" + std::to_string(quantum_in_));
  }
  components_.at(flat) = std::move(value);
}

bool IndexedTensor::same_shape(const IndexedTensor& other) const {
  return spec_ == other.spec_ && quantum_in_ == other.quantum_in_ &&
         quantum_out_ == other.quantum_out_;
}

std::string IndexedTensor::describe(const Assignment& assignment) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec_.size() && i < assignment.size(); ++i) {
    if (i > 0) os << ", ";
    os << spec_[i].name << "=" << assignment[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PhaseCell

PhaseCell::PhaseCell(IndexSpec spec)
    : spec_(std::move(spec)), space_(spec_), values_(space_.size(), Complex(1.0, 0.0)) {}

PhaseCell::PhaseCell(IndexSpec spec, std::vector<Complex> values)
    : spec_(std::move(spec)), space_(spec_), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw std::invalid_argument("PhaseCell: expected " + std::to_string(space_.size()) +
                                " values, got " + std::to_string(values_.size()));
  }
}

Complex PhaseCell::value(const Assignment& assignment) const {
  return values_[space_.flatten(assignment)];
}

void PhaseCell::set_value(const Assignment& assignment, Complex v) {
  values_[space_.flatten(assignment)] = v;
}

double PhaseCell::max_modulus_deviation() const {
  double worst = 0.0;
  for (const auto& v : values_) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  return worst;
}

bool PhaseCell::is_unit_modulus(double tol) const { return max_modulus_deviation() <= tol; }

IndexedTensor PhaseCell::to_tensor() const {
  IndexedTensor t(spec_, 1, 1);
  for (std::size_t k = 0; k < values_.size(); ++k) {
    t.set_component_at(k, ComplexMatrix::scalar(values_[k]));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Linear structure

IndexedTensor tensor_add(const IndexedTensor& a, const IndexedTensor& b) {
  require_same_shape(a, b, "tensor_add");
  IndexedTensor out = a;
  for (std::size_t k = 0; k < a.num_assignments(); ++k) {
    out.set_component_at(k, a.component_at(k) + b.component_at(k));
  }
  return out;
}

IndexedTensor tensor_scale(const IndexedTensor& a, Complex s) {
  return map_components(a, a.quantum_in(), a.quantum_out(),
                        [s](const ComplexMatrix& m) { return s * m; });
}

IndexedTensor tensor_dagger(const IndexedTensor& a) {
  return map_components(a, a.quantum_out(), a.quantum_in(),
                        [](const ComplexMatrix& m) { return dagger(m); });
}

IndexedTensor tensor_conjugate(const IndexedTensor& a) {
  return map_components(a, a.quantum_in(), a.quantum_out(),
                        [](const ComplexMatrix& m) { return conjugate(m); });
}

IndexedTensor tensor_double(const IndexedTensor& a) {
  return map_components(a, a.quantum_in() * a.quantum_in(), a.quantum_out() * a.quantum_out(),
                        [](const ComplexMatrix& m) { return kron(m, conjugate(m)); });
}

// ---------------------------------------------------------------------------
// Composition

IndexedTensor compose_quantum(const IndexedTensor& a, const IndexedTensor& b,
                              const std::vector<std::pair<std::string, std::string>>& shared) {
  if (a.quantum_out() != b.quantum_in()) {
    throw std::invalid_argument("compose_quantum: output wire of dimension " +
                                std::to_string(a.quantum_out()) +
                                " cannot feed input wire of dimension " +
                                std::to_string(b.quantum_in()));
  }
  // For every index of b: either the position in a it is identified with, or
  // its position in the result.
  const auto& bspec = b.index_spec();
  std::vector<std::size_t> b_source(bspec.size());
  std::vector<bool> b_is_shared(bspec.size(), false);
  std::set<std::string> shared_in_a;
  for (const auto& [an, bn] : shared) {
    const auto pa = a.position(an);
    const auto pb = b.position(bn);
    if (b_is_shared[pb] || !shared_in_a.insert(an).second) {
      throw std::invalid_argument("compose_quantum: index shared twice");
    }
    if (a.index_spec()[pa].system.size != bspec[pb].system.size) {
      throw std::invalid_argument("compose_quantum: shared indices '" + an + "' and '" + bn +
                                  "' have different sizes");
    }
    b_is_shared[pb] = true;
    b_source[pb] = pa;
  }
  IndexSpec spec = a.index_spec();
  for (std::size_t i = 0; i < bspec.size(); ++i) {
    if (b_is_shared[i]) continue;
    if (a.has_index(bspec[i].name)) {
      throw std::invalid_argument("compose_quantum: index '" + bspec[i].name +
                                  "' occurs on both sides but is not shared");
    }
    b_source[i] = spec.size();
    spec.push_back(bspec[i]);
  }

  IndexedTensor out(spec, a.quantum_in(), b.quantum_out());
  const auto& space = out.space();
  const std::size_t arank = a.rank();
  Assignment bassign(bspec.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    const Assignment full = space.at(k);
    std::size_t aflat = 0;
    for (std::size_t i = 0; i < arank; ++i) aflat += full[i] * a.space().stride(i);
    for (std::size_t i = 0; i < bspec.size(); ++i) bassign[i] = full[b_source[i]];
    out.set_component_at(k, matmul(b.component(bassign), a.component_at(aflat)));
  }
  return out;
}

IndexedTensor tensor_product(const IndexedTensor& a, const IndexedTensor& b) {
  IndexSpec spec = a.index_spec();
  for (const auto& idx : b.index_spec()) {
    if (a.has_index(idx.name)) {
      throw std::invalid_argument("tensor_product: index '" + idx.name + "' occurs on both sides");
    }
    spec.push_back(idx);
  }
  IndexedTensor out(spec, a.quantum_in() * b.quantum_in(), a.quantum_out() * b.quantum_out());
  const std::size_t arank = a.rank();
  for (std::size_t k = 0; k < out.num_assignments(); ++k) {
    const Assignment full = out.space().at(k);
    const Assignment aa(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(arank));
    const Assignment bb(full.begin() + static_cast<std::ptrdiff_t>(arank), full.end());
    out.set_component_at(k, kron(a.component(aa), b.component(bb)));
  }
  return out;
}

IndexedTensor sum_out(const IndexedTensor& t, std::string_view name) {
  const auto pos = t.position(name);
  IndexSpec spec = t.index_spec();
  spec.erase(spec.begin() + static_cast<std::ptrdiff_t>(pos));
  IndexedTensor out(spec, t.quantum_in(), t.quantum_out());
  const std::size_t stride = t.space().stride(pos);
  const std::size_t labels = t.index_spec()[pos].system.size;
  for (std::size_t k = 0; k < out.num_assignments(); ++k) {
    Assignment reduced = out.space().at(k);
    Assignment full(reduced);
    full.insert(full.begin() + static_cast<std::ptrdiff_t>(pos), 0);
    const std::size_t base = t.space().flatten(full);
    ComplexMatrix acc(t.quantum_out(), t.quantum_in());
    for (std::size_t l = 0; l < labels; ++l) acc += t.component_at(base + l * stride);
    out.set_component_at(k, std::move(acc));
  }
  return out;
}

IndexedTensor contract(const IndexedTensor& a, const IndexedTensor& b,
                       const std::vector<std::pair<std::string, std::string>>& shared) {
  IndexedTensor joined = compose_quantum(a, b, shared);
  for (const auto& pair : shared) joined = sum_out(joined, pair.first);
  return joined;
}

IndexedTensor trace_quantum(const IndexedTensor& t) {
  if (t.quantum_in() != t.quantum_out()) {
    throw std::invalid_argument("trace_quantum: wire dimensions differ (" +
                                std::to_string(t.quantum_out()) + " vs " +
                                std::to_string(t.quantum_in()) + ")");
  }
  return map_components(t, 1, 1,
                        [](const ComplexMatrix& m) { return ComplexMatrix::scalar(trace(m)); });
}

IndexedTensor permute(const IndexedTensor& t, const std::vector<std::string>& order) {
  if (order.size() != t.rank()) {
    throw std::invalid_argument("permute: expected " + std::to_string(t.rank()) + " names");
  }
  IndexSpec spec;
  std::vector<std::size_t> source;
  std::set<std::size_t> seen;
  for (const auto& name : order) {
    const auto pos = t.position(name);
    if (!seen.insert(pos).second) {
      throw std::invalid_argument("permute: index '" + name + "' listed twice");
    }
    source.push_back(pos);
    spec.push_back(t.index_spec()[pos]);
  }
  IndexedTensor out(spec, t.quantum_in(), t.quantum_out());
  Assignment original(t.rank());
  for (std::size_t k = 0; k < out.num_assignments(); ++k) {
    const Assignment a = out.space().at(k);
    for (std::size_t i = 0; i < a.size(); ++i) original[source[i]] = a[i];
    out.set_component_at(k, t.component(original));
  }
  return out;
}

IndexedTensor rename(const IndexedTensor& t, std::string_view from, std::string to) {
  const auto pos = t.position(from);
  if (from != to && t.has_index(to)) {
    throw std::invalid_argument("rename: index '" + to + "' already exists");
  }
  IndexSpec spec = t.index_spec();
  spec[pos].name = std::move(to);
  IndexedTensor out(spec, t.quantum_in(), t.quantum_out());
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    out.set_component_at(k, t.component_at(k));
  }
  return out;
}

IndexedTensor apply_phase(const IndexedTensor& t, const PhaseCell& phase) {
  std::vector<std::size_t> source;
  for (const auto& idx : phase.index_spec()) {
    const auto pos = t.position(idx.name);
    if (t.index_spec()[pos].system.size != idx.system.size) {
      throw std::invalid_argument("apply_phase: size mismatch on index '" + idx.name + "'");
    }
    source.push_back(pos);
  }
  IndexedTensor out = t;
  Assignment pa(source.size());
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    const Assignment a = t.space().at(k);
    for (std::size_t i = 0; i < source.size(); ++i) pa[i] = a[source[i]];
    out.set_component_at(k, phase.value(pa) * t.component_at(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical structure

IndexedTensor spider(const ClassicalSystem& region, std::size_t legs) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < legs; ++i) names.push_back(region.name + std::to_string(i));
  return spider(region, names);
}

IndexedTensor spider(const ClassicalSystem& region, const std::vector<std::string>& leg_names) {
  if (leg_names.empty()) {
    return IndexedTensor::scalar(static_cast<double>(region.size));
  }
  IndexSpec spec;
  for (const auto& n : leg_names) spec.push_back({n, region});
  return IndexedTensor::from_function(spec, 1, 1, [](const Assignment& a) {
    const bool all_equal = std::all_of(a.begin(), a.end(), [&](auto v) { return v == a[0]; });
    return ComplexMatrix::scalar(all_equal ? 1.0 : 0.0);
  });
}

IndexedTensor function_cell(const TensorIndex& in, const TensorIndex& out,
                            const std::function<std::size_t(std::size_t)>& g) {
  for (std::size_t x = 0; x < in.system.size; ++x) {
    if (g(x) >= out.system.size) {
      throw std::invalid_argument("function_cell: value " + std::to_string(g(x)) +
                                  " out of range for '" + out.name + "'");
    }
  }
  return IndexedTensor::from_function({in, out}, 1, 1, [&](const Assignment& a) {
    return ComplexMatrix::scalar(g(a[0]) == a[1] ? 1.0 : 0.0);
  });
}

IndexedTensor apply_ps(const IndexedTensor& t, std::string_view i, std::string_view j) {
  require_matching_pair(t, i, j, "apply_ps");
  const auto pi = t.position(i);
  const auto pj = t.position(j);
  IndexedTensor out = t;
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    const Assignment a = t.space().at(k);
    if (a[pi] != a[pj]) out.set_component_at(k, ComplexMatrix(t.quantum_out(), t.quantum_in()));
  }
  return out;
}

IndexedTensor apply_pd(const IndexedTensor& t, std::string_view i, std::string_view j) {
  require_matching_pair(t, i, j, "apply_pd");
  const auto pi = t.position(i);
  const auto pj = t.position(j);
  IndexedTensor out = t;
  for (std::size_t k = 0; k < t.num_assignments(); ++k) {
    const Assignment a = t.space().at(k);
    if (a[pi] == a[pj]) out.set_component_at(k, ComplexMatrix(t.quantum_out(), t.quantum_in()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

TensorComparison tensors_equal(const IndexedTensor& a, const IndexedTensor& b, double tol) {
  require_same_shape(a, b, "tensors_equal");
  TensorComparison result;
  std::size_t worst_at = 0;
  for (std::size_t k = 0; k < a.num_assignments(); ++k) {
    const double d = max_abs_diff(a.component_at(k), b.component_at(k));
    if (d > result.worst_deviation) {
      result.worst_deviation = d;
      worst_at = k;
    }
  }
  result.equal = result.worst_deviation <= tol;
  if (!result.equal) result.witness = a.space().at(worst_at);
  return result;
}

PhaseExtraction extract_phase(const IndexedTensor& lhs, const IndexedTensor& tmpl,
                              const SupportPredicate& support, double tol) {
  require_same_shape(lhs, tmpl, "extract_phase");
  PhaseExtraction out{.phase = PhaseCell(lhs.index_spec()), .worst_modulus_assignment = {}, .failures = {}};
  for (std::size_t k = 0; k < lhs.num_assignments(); ++k) {
    const Assignment a = lhs.space().at(k);
    if (!support(a)) continue;
    const auto l = lhs.component_at(k).entries();
    const auto t = tmpl.component_at(k).entries();
    Complex inner(0.0, 0.0);
    double norm2 = 0.0;
    for (std::size_t e = 0; e < t.size(); ++e) {
      inner += std::conj(t[e]) * l[e];
      norm2 += std::norm(t[e]);
    }
    // Least-squares ratio; a vanishing template leaves the phase free (1).
    const Complex s = norm2 > 0.0 ? inner / norm2 : Complex(1.0, 0.0);
    const Complex fit = norm2 > 0.0 ? s : Complex(0.0, 0.0);
    double residual = 0.0;
    for (std::size_t e = 0; e < t.size(); ++e) {
      residual = std::max(residual, std::abs(l[e] - fit * t[e]));
    }
    out.phase.set_value_at(k, s);
    out.worst_residual = std::max(out.worst_residual, residual);
    if (residual > tol) {
      out.proportional = false;
      out.failures.push_back({a, residual});
    }
    const double dev = std::abs(std::abs(s) - 1.0);
    if (dev > out.worst_modulus_deviation) {
      out.worst_modulus_deviation = dev;
      out.worst_modulus_assignment = a;
    }
  }
  out.unit_modulus = out.worst_modulus_deviation <= tol;
  return out;
}

SupportPredicate different_values(const IndexSpec& spec, std::string_view i, std::string_view j) {
  const auto pi = find_position(spec, i);
  const auto pj = find_position(spec, j);
  return [pi, pj](const Assignment& a) { return a[pi] != a[pj]; };
}

}  // namespace cqv
