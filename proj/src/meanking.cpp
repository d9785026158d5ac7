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

#include "cqv/meanking.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqv {

namespace {

void require_scheme_family(const ControlledFamily& family) {
  if (family.size() != family.dim() + 1) {
    throw std::invalid_argument("Mean King: need n + 1 bases of C^n, got " +
                                std::to_string(family.size()) + " bases of C^" +
                                std::to_string(family.dim()));
  }
}

/// Alice's measurement in the mu basis: indices (i), quantum n^2 -> 1.
IndexedTensor mu_measurement(const MeanKingScheme& scheme) {
  const std::size_t n = scheme.dim();
  const IndexSpec spec{{"i", {scheme.mu_basis.size(), "alice_outcome"}}};
  return IndexedTensor::from_function(spec, n * n, 1, [&](const Assignment& a) {
    ComplexMatrix row(1, n * n);
    const auto& amps = scheme.mu_basis[a[0]].amplitudes;
    for (std::size_t x = 0; x < amps.size(); ++x) row(0, x) = std::conj(amps[x]);
    return row;
  });
}

/// The lookup as a classical function from (b, i) to g. The fibre over g
/// keeps Alice's outcome as a register coordinate, so outcomes that share a
/// guess do not interfere.
IndexedTensor lookup_cell(const MeanKingScheme& scheme) {
  const std::size_t states = scheme.mu_basis.size();
  const IndexSpec spec{{"b", scheme.family.basis_system()},
                       {"i", {states, "alice_outcome"}},
                       {"g", scheme.family.outcome_system()}};
  return IndexedTensor::from_function(spec, 1, states, [&](const Assignment& a) {
    ComplexMatrix col(states, 1);
    if (scheme.lookup[a[1]][a[0]] == a[2]) col(a[1], 0) = 1.0;
    return col;
  });
}

}  // namespace

Complex BipartiteState::inner(const BipartiteState& other) const {
  if (other.amplitudes.size() != amplitudes.size()) {
    throw std::invalid_argument("BipartiteState::inner: dimension mismatch");
  }
  Complex acc(0.0, 0.0);
  for (std::size_t x = 0; x < amplitudes.size(); ++x) acc += std::conj(amplitudes[x]) * other.amplitudes[x];
  return acc;
}

double BipartiteState::norm() const { return std::sqrt(std::abs(inner(*this))); }

BipartiteState mu_state(std::span<const std::size_t> f, const ControlledFamily& family) {
  require_scheme_family(family);
  const std::size_t n = family.dim();
  if (f.size() != n + 1) {
    throw std::invalid_argument("mu_state: function has length " + std::to_string(f.size()) +
                                ", expected " + std::to_string(n + 1));
  }
  BipartiteState out{n, std::vector<Complex>(n * n, Complex(0.0, 0.0))};
  for (std::size_t a = 0; a <= n; ++a) {
    if (f[a] >= n) throw std::invalid_argument("mu_state: function value out of range");
    const ComplexMatrix v = family.vector(a, f[a]);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.amplitudes[j * n + k] += v(j, 0) * std::conj(v(k, 0));
    }
  }
  for (std::size_t k = 0; k < n; ++k) out.amplitudes[k * n + k] -= 1.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : out.amplitudes) z *= scale;
  return out;
}

BipartiteState post_measurement_state(const ControlledFamily& family, std::size_t basis,
                                      std::size_t outcome) {
  const std::size_t n = family.dim();
  const ComplexMatrix v = family.vector(basis, outcome);
  BipartiteState out{n, std::vector<Complex>(n * n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out.amplitudes[j * n + k] = v(j, 0) * std::conj(v(k, 0));
  }
  return out;
}

CollisionCheck check_collision_lemma(const ControlledFamily& family,
                                     const FunctionFamily& functions, double tol) {
  const double n = static_cast<double>(family.dim());
  std::vector<BipartiteState> states;
  for (const auto& f : functions.functions) states.push_back(mu_state(f, family));
  CollisionCheck out;
  for (std::size_t x = 0; x < states.size(); ++x) {
    for (std::size_t y = 0; y < states.size(); ++y) {
      const Complex lhs = n * states[x].inner(states[y]) + 1.0;
      const double rhs =
          static_cast<double>(collisions(functions.functions[x], functions.functions[y]));
      const double dev = std::abs(lhs - rhs);
      if (dev > out.worst_deviation || out.pairs_checked == 0) {
        out.worst_deviation = std::max(dev, out.worst_deviation);
        out.worst_f = x;
        out.worst_g = y;
      }
      ++out.pairs_checked;
    }
  }
  out.passed = out.worst_deviation <= tol;
  return out;
}

MeanKingScheme make_scheme(const ControlledFamily& family, const FunctionFamily& functions) {
  require_scheme_family(family);
  if (functions.n != family.dim() || functions.functions.size() != family.dim() * family.dim()) {
    throw std::invalid_argument("make_scheme: need n^2 functions for n = " +
                                std::to_string(family.dim()));
  }
  MeanKingScheme scheme{family, {}, {}};
  for (const auto& f : functions.functions) {
    scheme.mu_basis.push_back(mu_state(f, family));
    scheme.lookup.push_back(f);
  }
  return scheme;
}

MeanKingScheme build_scheme(std::size_t n) { return make_scheme(mub_family(n), function_family(n)); }

MeanKingScheme corrupt_lookup(const MeanKingScheme& scheme, std::size_t state,
                              std::size_t basis) {
  MeanKingScheme out = scheme;
  auto& entry = out.lookup.at(state).at(basis);
  entry = (entry + 1) % scheme.dim();
  return out;
}

OrthonormalityCheck check_orthonormal(const MeanKingScheme& scheme, double tol) {
  OrthonormalityCheck out;
  const auto& states = scheme.mu_basis;
  for (std::size_t x = 0; x < states.size(); ++x) {
    for (std::size_t y = 0; y < states.size(); ++y) {
      const Complex expected = x == y ? 1.0 : 0.0;
      const double dev = std::abs(states[x].inner(states[y]) - expected);
      if (dev > out.gram_deviation) {
        out.gram_deviation = dev;
        out.worst_i = x;
        out.worst_j = y;
      }
    }
  }
  out.passed = out.gram_deviation <= tol;
  return out;
}

SupportCheck verify_support(const MeanKingScheme& scheme, double tol) {
  SupportCheck out;
  const std::size_t n = scheme.dim();
  for (std::size_t b = 0; b < scheme.family.size(); ++b) {
    for (std::size_t k = 0; k < n; ++k) {
      const BipartiteState joint = post_measurement_state(scheme.family, b, k);
      for (std::size_t i = 0; i < scheme.mu_basis.size(); ++i) {
        if (scheme.lookup[i][b] == k) continue;
        const double overlap = std::norm(scheme.mu_basis[i].inner(joint));
        if (overlap > out.worst_overlap) {
          out.worst_overlap = overlap;
          out.witness = NamedAssignment{{"i", i}, {"b", b}, {"k", k}};
        }
      }
    }
  }
  out.passed = out.worst_overlap <= tol;
  if (out.passed) out.witness.reset();
  return out;
}

IndexedTensor build_mk_tensor(const MeanKingScheme& scheme) {
  const std::size_t n = scheme.dim();
  const ControlledFamily& f = scheme.family;

  IndexedTensor cup({}, 1, n * n);
  {
    ComplexMatrix v(n * n, 1);
    for (std::size_t j = 0; j < n; ++j) v(j * n + j, 0) = 1.0 / std::sqrt(static_cast<double>(n));
    cup.set_component_at(0, std::move(v));
  }
  // The King measures the travelling half and resends the basis state he saw.
  const IndexedTensor king_measure =
      tensor_product(measurement_cell(f, false, "b", "k"), IndexedTensor::identity(n));
  const IndexedTensor king_prepare =
      tensor_product(encoding_cell(f, false, "b", "k"), IndexedTensor::identity(n));
  const IndexedTensor returned = compose_quantum(compose_quantum(cup, king_measure), king_prepare,
                                                 {{"b", "b"}, {"k", "k"}});
  const IndexedTensor measured = compose_quantum(returned, mu_measurement(scheme));
  const IndexedTensor guessed =
      compose_quantum(measured, lookup_cell(scheme), {{"b", "b"}, {"i", "i"}});
  return permute(sum_out(guessed, "i"), {"b", "k", "g"});
}

MkReport check_mk_equation(const MeanKingScheme& scheme, double tol) {
  MkReport report;
  const SupportCheck support = verify_support(scheme, tol);
  report.support_ok = support.passed;

  const IndexedTensor lhs = build_mk_tensor(scheme);
  const IndexedTensor rhs = apply_ps(lhs, "k", "g");
  const TensorComparison cmp = tensors_equal(lhs, rhs, tol);
  report.equation_ok = cmp.equal;
  if (cmp.witness) report.witness = name_assignment(lhs.index_spec(), *cmp.witness);

  const std::size_t bases = scheme.family.size();
  double success = 0.0;
  for (std::size_t b = 0; b < bases; ++b) {
    for (std::size_t k = 0; k < scheme.dim(); ++k) {
      success += lhs.component({b, k, k}).eigen().squaredNorm();
    }
  }
  report.success_probability = success / static_cast<double>(bases);
  report.worst_violation = std::max({cmp.worst_deviation, support.worst_overlap,
                                     std::abs(1.0 - report.success_probability)});
  if (!report.witness && support.witness) report.witness = support.witness;
  return report;
}

Simulation simulate(const MeanKingScheme& scheme, std::size_t king_basis,
                    std::size_t king_outcome) {
  const std::size_t n = scheme.dim();
  if (king_basis >= scheme.family.size() || king_outcome >= n) {
    throw std::out_of_range("simulate: basis " + std::to_string(king_basis) + " / outcome " +
                            std::to_string(king_outcome) + " out of range for n = " +
                            std::to_string(n));
  }
  Simulation sim;
  sim.king_basis = king_basis;
  sim.king_outcome = king_outcome;

  // (<b_k| (x) 1) applied to the normalized cup leaves conj(b_k)/sqrt(n) behind.
  const ComplexMatrix v = scheme.family.vector(king_basis, king_outcome);
  sim.king_outcome_probability = v.eigen().squaredNorm() / static_cast<double>(n);

  const BipartiteState joint = post_measurement_state(scheme.family, king_basis, king_outcome);
  for (std::size_t i = 0; i < scheme.mu_basis.size(); ++i) {
    const double p = std::norm(scheme.mu_basis[i].inner(joint));
    const std::size_t guess = scheme.lookup[i][king_basis];
    sim.entries.push_back({i, guess, p});
    if (guess == king_outcome) sim.success_probability += p;
  }
  return sim;
}

IndexedTensor auxiliary_lhs(const ControlledFamily& family, std::span<const std::size_t> g) {
  require_scheme_family(family);
  if (g.size() != family.size()) {
    throw std::invalid_argument("auxiliary_lhs: g must have one value per basis");
  }
  // Encode in basis c the outcome chosen by g, in doubled form.
  const IndexedTensor choose =
      function_cell({"c", family.basis_system()}, {"x", family.outcome_system()},
                    [&](std::size_t c) { return g[c]; });
  const IndexedTensor encoded =
      sum_out(compose_quantum(choose, encoding_cell(family, false, "c", "x"),
                              {{"c", "c"}, {"x", "x"}}),
              "x");
  const IndexedTensor doubled = tensor_double(encoded);
  const IndexedTensor measured =
      compose_quantum(doubled, tensor_double(measurement_cell(family, false, "a", "b")));
  return sum_out(measured, "c");
}

IndexedTensor auxiliary_rhs(const ControlledFamily& family, std::span<const std::size_t> g) {
  require_scheme_family(family);
  const IndexedTensor delta =
      function_cell({"a", family.basis_system()}, {"b", family.outcome_system()},
                    [&](std::size_t a) { return g[a]; });
  const IndexedTensor one = IndexedTensor::from_function(
      delta.index_spec(), 1, 1, [](const Assignment&) { return ComplexMatrix::scalar(1.0); });
  return tensor_add(delta, one);
}

}  // namespace cqv
