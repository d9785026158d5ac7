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

#include "cqv/qkd.hpp"

#include <cmath>
#include <stdexcept>

namespace cqv {

namespace {

const std::vector<std::string> kCanonicalOrder{"s", "e", "k", "m", "r"};

/// Eve intercepts in e, copies her result m and resends |e_m>; Bob measures
/// in Alice's basis. `prepared` carries indices (s, k) and a 1 -> dim wire.
IndexedTensor intercept_and_measure(const ControlledFamily& f, const IndexedTensor& prepared) {
  const IndexedTensor eve = compose_quantum(measurement_cell(f, false, "e", "m"),
                                            encoding_cell(f, false, "e", "m"),
                                            {{"e", "e"}, {"m", "m"}});
  const IndexedTensor intercepted = compose_quantum(prepared, eve);
  // Comparing bases identifies Bob's control region with Alice's.
  const IndexedTensor bob = measurement_cell(f, false, "s_bob", "r");
  return permute(compose_quantum(intercepted, bob, {{"s", "s_bob"}}), kCanonicalOrder);
}

IndexedTensor cup(std::size_t m) {
  IndexedTensor t({}, 1, m * m);
  ComplexMatrix v(m * m, 1);
  for (std::size_t j = 0; j < m; ++j) v(j * m + j, 0) = 1.0;
  t.set_component_at(0, std::move(v));
  return t;
}

IndexedTensor ones(const IndexSpec& spec) {
  return IndexedTensor::from_function(spec, 1, 1,
                                      [](const Assignment&) { return ComplexMatrix::scalar(1.0); });
}

}  // namespace

std::string_view protocol_name(Protocol p) { return p == Protocol::bb84 ? "bb84" : "e91"; }

IndexSpec qkd_index_spec(const ControlledFamily& f) {
  return {{"s", f.basis_system()},
          {"e", f.basis_system()},
          {"k", f.outcome_system()},
          {"m", f.outcome_system()},
          {"r", f.outcome_system()}};
}

IndexedTensor build_bb84_lhs(const ControlledFamily& f) {
  return intercept_and_measure(f, encoding_cell(f, false, "s", "k"));
}

IndexedTensor build_e91_lhs(const ControlledFamily& f) {
  const IndexedTensor alice =
      tensor_product(measurement_cell(f, true, "s", "k"), IndexedTensor::identity(f.dim()));
  return intercept_and_measure(f, compose_quantum(cup(f.dim()), alice));
}

IndexedTensor correlated_pattern(const ControlledFamily& f) {
  return permute(tensor_product(spider(f.basis_system(), {"s", "e"}),
                                spider(f.outcome_system(), {"k", "m", "r"})),
                 kCanonicalOrder);
}

IndexedTensor uniform_template(const ControlledFamily& f) {
  return tensor_scale(ones(qkd_index_spec(f)), 1.0 / static_cast<double>(f.dim()));
}

IndexedTensor build_bb84_rhs(const ControlledFamily& f, const PhaseCell& psi) {
  if (psi.index_spec() != qkd_index_spec(f)) {
    throw std::invalid_argument("build_bb84_rhs: psi must be indexed by (s, e, k, m, r)");
  }
  const IndexedTensor pd_term = apply_pd(apply_phase(uniform_template(f), psi), "s", "e");
  const IndexedTensor ps_term = apply_ps(correlated_pattern(f), "s", "e");
  return tensor_add(pd_term, ps_term);
}

QkdReport check_qkd(const ControlledFamily& f, Protocol protocol, double tol) {
  QkdReport report;
  report.protocol = protocol;
  const IndexedTensor lhs = protocol == Protocol::bb84 ? build_bb84_lhs(f) : build_e91_lhs(f);
  const IndexSpec& spec = lhs.index_spec();

  // Eve guessed the basis: holds for every family.
  const TensorComparison ps =
      tensors_equal(apply_ps(lhs, "s", "e"), apply_ps(correlated_pattern(f), "s", "e"), tol);
  report.ps_ok = ps.equal;
  report.ps_deviation = ps.worst_deviation;

  PhaseExtraction pd = extract_phase(apply_pd(lhs, "s", "e"),
                                     apply_pd(uniform_template(f), "s", "e"),
                                     different_values(spec, "s", "e"), tol);
  report.pd_proportional = pd.proportional;
  report.psi_unit_modulus = pd.unit_modulus;
  report.pd_failures = pd.failures;
  report.worst_violation = std::max(ps.worst_deviation, pd.worst_violation());
  report.passed = report.ps_ok && report.pd_proportional && report.psi_unit_modulus;

  if (!ps.equal && ps.witness) {
    report.witness = name_assignment(spec, *ps.witness);
  } else if (!pd.failures.empty()) {
    report.witness = name_assignment(spec, pd.failures.front().assignment);
  } else if (!pd.unit_modulus && pd.worst_modulus_assignment) {
    report.witness = name_assignment(spec, *pd.worst_modulus_assignment);
  }
  report.psi = std::move(pd.phase);
  return report;
}

QkdReport check_bb84(const ControlledFamily& f, double tol) {
  return check_qkd(f, Protocol::bb84, tol);
}

QkdReport check_e91(const ControlledFamily& f, double tol) {
  return check_qkd(f, Protocol::e91, tol);
}

PhaseCell psi_from_phi(const ControlledFamily& f, const PhaseCell& phi) {
  const IndexSpec expected{{"a", f.basis_system()},
                           {"b", f.basis_system()},
                           {"i", f.outcome_system()},
                           {"j", f.outcome_system()}};
  if (phi.index_spec() != expected) {
    throw std::invalid_argument("psi_from_phi: phi must be indexed by (a, b, i, j) over " +
                                std::to_string(f.size()) + " bases of dimension " +
                                std::to_string(f.dim()));
  }
  PhaseCell psi(qkd_index_spec(f));
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const Assignment x = psi.space().at(flat);
    const std::size_t s = x[0], e = x[1], k = x[2], m = x[3], r = x[4];
    psi.set_value_at(flat, phi.value({s, e, k, m}) * std::conj(phi.value({s, e, r, m})));
  }
  return psi;
}

AlphaIdentityReport check_alpha_identity(const ControlledFamily& f, const PhaseCell& psi,
                                         double tol) {
  if (psi.index_spec() != qkd_index_spec(f)) {
    throw std::invalid_argument("check_alpha_identity: psi must be indexed by (s, e, k, m, r)");
  }
  const IndexedTensor alpha =
      tensor_scale(build_alpha(f), std::sqrt(static_cast<double>(f.dim())));
  const IndexedTensor gram = apply_pd(
      compose_quantum(alpha, tensor_dagger(alpha), {{"a", "a"}, {"b", "b"}, {"i", "i"}, {"j", "j"}}),
      "a", "b");
  const IndexSpec& spec = gram.index_spec();
  const IndexedTensor from_psi = apply_pd(
      IndexedTensor::from_function(spec, 1, 1,
                                   [&](const Assignment& x) {
                                     return ComplexMatrix::scalar(
                                         psi.value({x[0], x[1], x[2], x[3], x[2]}));
                                   }),
      "a", "b");
  const IndexedTensor identity = apply_pd(ones(spec), "a", "b");

  const TensorComparison via_psi = tensors_equal(gram, from_psi, tol);
  const TensorComparison via_identity = tensors_equal(gram, identity, tol);
  AlphaIdentityReport report;
  report.psi_deviation = via_psi.worst_deviation;
  report.identity_deviation = via_identity.worst_deviation;
  report.holds = via_psi.equal && via_identity.equal;
  if (!via_identity.equal) {
    report.witness = name_assignment(spec, *via_identity.witness);
  } else if (!via_psi.equal) {
    report.witness = name_assignment(spec, *via_psi.witness);
  }
  return report;
}

}  // namespace cqv
