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

// BB84 and E91 key distribution as equations between indexed tensors.
//
// Every QKD tensor is scalar-valued with indices in the fixed order
//   s : basis shared by Alice and Bob after comparing bases
//   e : Eve's basis
//   k : Alice's bit
//   m : Eve's measurement result
//   r : Bob's result
// which is also the leg order of the phase psi.

#include <optional>
#include <string_view>
#include <vector>

#include "cqv/diagrams.hpp"
#include "cqv/families.hpp"

namespace cqv {

enum class Protocol { bb84, e91 };

std::string_view protocol_name(Protocol p);

struct QkdReport {
  Protocol protocol = Protocol::bb84;
  bool ps_ok = false;
  double ps_deviation = 0.0;
  bool pd_proportional = false;
  std::optional<PhaseCell> psi;
  bool psi_unit_modulus = false;
  bool passed = false;
  double worst_violation = 0.0;
  std::optional<NamedAssignment> witness;
  /// Assignments on the Pd support where the left side is not proportional
  /// to the template, in assignment order.
  std::vector<ProportionalityFailure> pd_failures;
};

IndexSpec qkd_index_spec(const ControlledFamily& f);

/// Alice prepares |s_k>, Eve measures in e (result m) and resends |e_m>, Bob
/// measures in s. Components <s_r|e_m><e_m|s_k>.
IndexedTensor build_bb84_lhs(const ControlledFamily& f);

/// Alice and Bob share a cup; Alice measures her leg with the conjugate
/// measurement (the bent wire), which leaves |s_k> on the other leg. Built in
/// order (s, k, e, m, r) and rewired to the canonical order.
IndexedTensor build_e91_lhs(const ControlledFamily& f);

/// Fully correlated pattern: s = e and k = m = r.
IndexedTensor correlated_pattern(const ControlledFamily& f);
/// (1/m) times uniform spiders on all five indices.
IndexedTensor uniform_template(const ControlledFamily& f);

/// Pd(s, e) [psi * uniform_template] + Ps(s, e) [correlated_pattern].
IndexedTensor build_bb84_rhs(const ControlledFamily& f, const PhaseCell& psi);

QkdReport check_qkd(const ControlledFamily& f, Protocol protocol, double tol = kDefaultTolerance);
QkdReport check_bb84(const ControlledFamily& f, double tol = kDefaultTolerance);
QkdReport check_e91(const ControlledFamily& f, double tol = kDefaultTolerance);

/// psi(s, e, k, m, r) = phi(s, e, k, m) * conj(phi(s, e, r, m)), with phi laid
/// out as (a, b, i, j). Throws std::invalid_argument on a spec mismatch.
PhaseCell psi_from_phi(const ControlledFamily& f, const PhaseCell& phi);

struct AlphaIdentityReport {
  bool holds = false;
  /// Deviation between alpha^dagger alpha and psi restricted to r = k.
  double psi_deviation = 0.0;
  /// Deviation between alpha^dagger alpha and the disconnected identity.
  double identity_deviation = 0.0;
  std::optional<NamedAssignment> witness;
};

/// With alpha normalized by sqrt(m), checks on the Pd(a, b) support that
/// alpha^dagger alpha = psi(a, b, i, j, i) = 1.
AlphaIdentityReport check_alpha_identity(const ControlledFamily& f, const PhaseCell& psi,
                                         double tol = kDefaultTolerance);

}  // namespace cqv
