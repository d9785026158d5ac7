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

// The Mean King problem: Alice prepares a maximally entangled pair, hands the
// first half to the King, who measures it in one of n + 1 mutually unbiased
// bases and returns it. Alice measures both halves in a basis of states
// |mu_f>, learns the King's basis, and must name his outcome.
//
// Conventions: bipartite amplitudes are indexed j * n + k for |j> (x) |k>.
// The first factor is the system that travels to the King; the second factor
// is Alice's kept half. After the King measures outcome k in basis b the
// joint state is |b_k> (x) conj(|b_k>).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cqv/diagrams.hpp"
#include "cqv/families.hpp"
#include "cqv/gf.hpp"

namespace cqv {

struct BipartiteState {
  std::size_t dim = 0;
  std::vector<Complex> amplitudes;  // size dim * dim

  /// <this|other>
  Complex inner(const BipartiteState& other) const;
  double norm() const;
};

/// (1/sqrt n) * ( sum_a |a_{f(a)}> (x) conj(|a_{f(a)}>) - sum_k |k> (x) |k> ).
/// Requires a family of n + 1 bases of C^n and f of length n + 1 with values
/// below n; throws std::invalid_argument otherwise.
BipartiteState mu_state(std::span<const std::size_t> f, const ControlledFamily& family);

/// |b_k> (x) conj(|b_k>).
BipartiteState post_measurement_state(const ControlledFamily& family, std::size_t basis,
                                      std::size_t outcome);

struct CollisionCheck {
  bool passed = false;
  double worst_deviation = 0.0;
  std::size_t worst_f = 0;
  std::size_t worst_g = 0;
  std::size_t pairs_checked = 0;
};

/// n <mu_f|mu_g> + 1 = f <> g over all ordered pairs of the function family.
CollisionCheck check_collision_lemma(const ControlledFamily& family,
                                     const FunctionFamily& functions,
                                     double tol = kDefaultTolerance);

struct MeanKingScheme {
  ControlledFamily family;
  std::vector<BipartiteState> mu_basis;
  /// lookup[i][b]: Alice's guess after outcome i when the King reveals basis b.
  std::vector<std::vector<std::size_t>> lookup;

  std::size_t dim() const { return family.dim(); }
};

/// Scheme from any family of n + 1 bases and n^2 functions [n+1] -> [n].
MeanKingScheme make_scheme(const ControlledFamily& family, const FunctionFamily& functions);
/// mub_family(n) with function_family(n). Throws for unsupported n.
MeanKingScheme build_scheme(std::size_t n);

/// Returns a copy whose lookup[state][basis] is shifted by one (mod n).
MeanKingScheme corrupt_lookup(const MeanKingScheme& scheme, std::size_t state = 0,
                              std::size_t basis = 0);

struct OrthonormalityCheck {
  bool passed = false;
  double gram_deviation = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

OrthonormalityCheck check_orthonormal(const MeanKingScheme& scheme,
                                      double tol = kDefaultTolerance);

struct SupportCheck {
  bool passed = false;
  /// Largest |<mu_i | b_k (x) conj(b_k)>|^2 with lookup[i][b] != k.
  double worst_overlap = 0.0;
  std::optional<NamedAssignment> witness;  // (i, b, k)
};

SupportCheck verify_support(const MeanKingScheme& scheme, double tol = kDefaultTolerance);

/// The scheme as a diagram: indices (b: King's basis, k: King's outcome,
/// g: Alice's guess), each component an n^2 x 1 column whose entry i is the
/// amplitude of Alice's outcome i routed to guess g by the lookup. The cup is
/// normalized, so at fixed b the squared norms sum to 1 over (k, g).
IndexedTensor build_mk_tensor(const MeanKingScheme& scheme);

struct MkReport {
  bool support_ok = false;
  bool equation_ok = false;
  double success_probability = 0.0;
  double worst_violation = 0.0;
  std::optional<NamedAssignment> witness;
};

/// Compares build_mk_tensor with its image under the compare spider on
/// (k, g), and computes the success probability for a uniformly chosen basis.
MkReport check_mk_equation(const MeanKingScheme& scheme, double tol = kDefaultTolerance);

struct SimulationEntry {
  std::size_t alice_outcome = 0;
  std::size_t guess = 0;
  double probability = 0.0;
};

struct Simulation {
  std::size_t king_basis = 0;
  std::size_t king_outcome = 0;
  /// Probability that the King sees king_outcome in king_basis.
  double king_outcome_probability = 0.0;
  /// Conditional distribution over Alice's outcomes, one entry per outcome.
  std::vector<SimulationEntry> entries;
  double success_probability = 0.0;
};

/// Exact conditional distribution. Throws std::out_of_range for bad indices.
Simulation simulate(const MeanKingScheme& scheme, std::size_t king_basis,
                    std::size_t king_outcome);

/// Left side of the auxiliary identity for a classical function g: [n+1] -> [n]:
/// sum over bases c of |<a_b | c_{g(c)}>|^2, indexed (a: basis, b: outcome).
IndexedTensor auxiliary_lhs(const ControlledFamily& family, std::span<const std::size_t> g);
/// delta(g(a), b) + 1.
IndexedTensor auxiliary_rhs(const ControlledFamily& family, std::span<const std::size_t> g);

}  // namespace cqv
