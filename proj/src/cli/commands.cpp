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

#include <algorithm>
#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "cqv/cli.hpp"
#include "cqv/gf.hpp"
#include "cqv/meanking.hpp"
#include "cqv/qkd.hpp"

namespace cqv::cli {

namespace {

Json family_inputs(const FamilySource& source) {
  Json j = Json::object();
  if (source.dim) j["dim"] = *source.dim;
  if (source.file) j["file"] = source.file->string();
  return j;
}

CheckResult from_report(const ComplementarityReport& r) {
  return {std::string(method_name(r.method)), r.passed, r.worst_violation, r.witness};
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

void require_mub_dimension(std::size_t n) {
  if (!mub_supported(n)) {
    throw UsageError("unsupported dimension " + std::to_string(n) +
                     " (supported: 2, 3, 4, 5, 7, 8, 9)");
  }
}

}  // namespace

Report cmd_mub(std::size_t n, double tol) {
  require_mub_dimension(n);
  Report report;
  report.command = "check-mub";
  report.inputs["dim"] = n;
  report.tolerance = tol;
  const ControlledFamily family = mub_family(n);
  for (std::size_t a = 0; a < family.size(); ++a) {
    const double dev = unitarity_deviation(family.basis(a));
    report.add({"unitary[" + std::to_string(a) + "]", dev <= tol, dev, std::nullopt});
  }
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const double dev = unbiasedness_deviation(family.basis(a), family.basis(b), n);
      std::optional<NamedAssignment> witness;
      if (dev > tol) witness = NamedAssignment{{"a", a}, {"b", b}};
      report.add({"unbiased[" + std::to_string(a) + "," + std::to_string(b) + "]", dev <= tol,
                  dev, witness});
      ++pairs;
    }
  }
  report.details["bases"] = family.size();
  report.details["pair_checks"] = pairs;
  report.finalize();
  return report;
}

Report cmd_complementary(const FamilySource& source,
                         const std::vector<ComplementarityMethod>& methods, double tol) {
  const ControlledFamily family = load_family(source, tol);
  Report report;
  report.command = "check-complementary";
  report.inputs = family_inputs(source);
  Json names = Json::array();
  for (auto m : methods) names.push_back(method_name(m));
  report.inputs["methods"] = names;
  report.tolerance = tol;

  std::vector<bool> verdicts;
  for (auto m : methods) {
    const ComplementarityReport r = check_complementarity(family, m, tol);
    verdicts.push_back(r.passed);
    report.add(from_report(r));
  }
  Json matrix = Json::array();
  for (std::size_t x = 0; x < verdicts.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < verdicts.size(); ++y) row.push_back(verdicts[x] == verdicts[y]);
    matrix.push_back(std::move(row));
  }
  report.details["dim"] = family.dim();
  report.details["bases"] = family.size();
  report.details["all_agree"] =
      std::adjacent_find(verdicts.begin(), verdicts.end(), std::not_equal_to<>()) == verdicts.end();
  report.details["agreement"] = std::move(matrix);
  report.finalize();
  return report;
}

Report cmd_qkd(const std::vector<Protocol>& protocols, const FamilySource& source, double tol) {
  const ControlledFamily family = load_family(source, tol);
  Report report;
  report.command = "check-qkd";
  report.inputs = family_inputs(source);
  Json names = Json::array();
  for (auto p : protocols) names.push_back(protocol_name(p));
  report.inputs["protocols"] = names;
  report.tolerance = tol;

  std::optional<PhaseCell> psi;
  Json verdicts = Json::object();
  for (auto p : protocols) {
    const QkdReport r = check_qkd(family, p, tol);
    const std::string prefix(protocol_name(p));
    report.add({prefix + ".ps", r.ps_ok, r.ps_deviation, std::nullopt});
    report.add({prefix + ".pd", r.pd_proportional && r.psi_unit_modulus, r.worst_violation,
                r.witness});
    verdicts[prefix] = r.passed;
    if (!psi) psi = r.psi;
  }
  if (protocols.size() > 1) {
    const TensorComparison eq = tensors_equal(build_bb84_lhs(family), build_e91_lhs(family), tol);
    std::optional<NamedAssignment> witness;
    if (eq.witness) witness = name_assignment(qkd_index_spec(family), *eq.witness);
    report.add({"bb84_e91_equivalence", eq.equal, eq.worst_deviation, witness});
  }

  // psi rebuilt from the phase of the doubled complementarity condition.
  const ComplementarityReport eq10 = check_eq10(family, tol);
  const PhaseCell rebuilt = psi_from_phi(family, *eq10.extracted_phase);
  const IndexSpec spec = qkd_index_spec(family);
  const TensorComparison decomposition = tensors_equal(
      apply_pd(rebuilt.to_tensor(), "s", "e"), apply_pd(psi->to_tensor(), "s", "e"), tol);
  std::optional<NamedAssignment> dec_witness;
  if (decomposition.witness) dec_witness = name_assignment(spec, *decomposition.witness);
  report.add({"psi_decomposition", decomposition.equal, decomposition.worst_deviation,
              dec_witness});

  const AlphaIdentityReport alpha = check_alpha_identity(family, *psi, tol);
  report.add({"alpha_identity", alpha.holds,
              std::max(alpha.psi_deviation, alpha.identity_deviation), alpha.witness});

  Json psi_values = Json::array();
  for (std::size_t flat = 0; flat < psi->size(); ++flat) {
    const Assignment x = psi->space().at(flat);
    if (x[0] == x[1]) continue;
    Json row = Json::array();
    for (auto label : x) row.push_back(label);
    const Complex z = psi->value_at(flat);
    row.push_back(round_report_value(z.real()));
    row.push_back(round_report_value(z.imag()));
    psi_values.push_back(std::move(row));
  }
  report.details["dim"] = family.dim();
  report.details["bases"] = family.size();
  report.details["verdicts"] = std::move(verdicts);
  report.details["psi_layout"] = Json::array({"s", "e", "k", "m", "r", "re", "im"});
  report.details["psi"] = std::move(psi_values);
  report.finalize();
  return report;
}

Report cmd_meanking(const MeanKingOptions& options, double tol) {
  require_mub_dimension(options.n);
  Report report;
  report.command = "mean-king";
  report.inputs["dim"] = options.n;
  report.inputs["mode"] = options.mode == MeanKingMode::construct ? "construct"
                          : options.mode == MeanKingMode::verify  ? "verify"
                                                                  : "simulate";
  if (options.basis) report.inputs["basis"] = *options.basis;
  if (options.outcome) report.inputs["outcome"] = *options.outcome;
  report.inputs["corrupt_lookup"] = options.corrupt_lookup;
  report.tolerance = tol;

  const std::size_t n = options.n;
  if (options.mode == MeanKingMode::simulate) {
    if (!options.basis || !options.outcome) {
      throw UsageError("--mode simulate requires --basis and --outcome");
    }
    if (*options.basis > n || *options.outcome >= n) {
      throw UsageError("--basis must be in [0, " + std::to_string(n) + "] and --outcome in [0, " +
                       std::to_string(n - 1) + "]");
    }
  }

  MeanKingScheme scheme = build_scheme(n);
  if (options.corrupt_lookup) scheme = corrupt_lookup(scheme);

  const OrthonormalityCheck ortho = check_orthonormal(scheme, tol);
  auto ortho_witness = [&]() -> std::optional<NamedAssignment> {
    if (ortho.passed) return std::nullopt;
    return NamedAssignment{{"i", ortho.worst_i}, {"j", ortho.worst_j}};
  };

  switch (options.mode) {
    case MeanKingMode::construct: {
      report.add({"orthonormality", ortho.passed, ortho.gram_deviation, ortho_witness()});
      Json lookup = Json::array();
      for (const auto& row : scheme.lookup) lookup.push_back(row);
      report.details["bases"] = scheme.family.size();
      report.details["states"] = scheme.mu_basis.size();
      report.details["lookup"] = std::move(lookup);
      break;
    }
    case MeanKingMode::verify: {
      const CollisionCheck coll = check_collision_lemma(scheme.family, function_family(n), tol);
      std::optional<NamedAssignment> coll_witness;
      if (!coll.passed) coll_witness = NamedAssignment{{"f", coll.worst_f}, {"g", coll.worst_g}};
      report.add({"collision_lemma", coll.passed, coll.worst_deviation, coll_witness});
      report.add({"orthonormality", ortho.passed, ortho.gram_deviation, ortho_witness()});
      const SupportCheck support = verify_support(scheme, tol);
      report.add({"support", support.passed, support.worst_overlap, support.witness});
      const MkReport mk = check_mk_equation(scheme, tol);
      report.add({"mk_equation", mk.equation_ok, mk.worst_violation, mk.witness});
      const double shortfall = std::abs(1.0 - mk.success_probability);
      report.add({"success_probability", shortfall <= tol, shortfall, std::nullopt});
      report.details["success_probability"] = round_report_value(mk.success_probability);
      break;
    }
    case MeanKingMode::simulate: {
      const Simulation sim = simulate(scheme, *options.basis, *options.outcome);
      const double shortfall = std::abs(1.0 - sim.success_probability);
      std::optional<NamedAssignment> witness;
      if (shortfall > tol) {
        witness = NamedAssignment{{"b", sim.king_basis}, {"k", sim.king_outcome}};
      }
      report.add({"guess_correct", shortfall <= tol, shortfall, witness});
      Json rows = Json::array();
      for (const auto& e : sim.entries) {
        Json row;
        row["alice_outcome"] = e.alice_outcome;
        row["guess"] = e.guess;
        row["probability"] = round_report_value(e.probability);
        rows.push_back(std::move(row));
      }
      Json by_guess = Json::array();
      for (std::size_t g = 0; g < n; ++g) {
        double p = 0.0;
        for (const auto& e : sim.entries) p += e.guess == g ? e.probability : 0.0;
        by_guess.push_back(round_report_value(p));
      }
      report.details["king_outcome_probability"] = round_report_value(sim.king_outcome_probability);
      report.details["success_probability"] = round_report_value(sim.success_probability);
      report.details["guess_distribution"] = std::move(by_guess);
      report.details["distribution"] = std::move(rows);
      break;
    }
  }
  report.finalize();
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_tol) {
  CLI::App app{"cqv: numerical checks for complementary families, QKD and the Mean King problem",
               "cqv"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol_flag;
  bool quiet = false;
  bool timing = false;
  app.add_option("--tol", tol_flag, "Absolute tolerance for every check (default 1e-9)");
  app.add_flag("--quiet", quiet, "Suppress the summary on standard error");
  app.add_flag("--timing", timing, "Record wall time in the report (breaks byte-stability)");

  std::size_t mub_dim = 0;
  auto* mub = app.add_subcommand("check-mub", "Validate the built-in MUB family of a dimension");
  mub->add_option("--dim", mub_dim, "Hilbert space dimension")->required();

  FamilySource comp_source;
  std::string method = "all";
  auto* comp = app.add_subcommand("check-complementary", "Run complementarity characterizations");
  comp->add_option("--dim", comp_source.dim, "Use the built-in MUB family of this dimension");
  comp->add_option("--file", comp_source.file, "Read the family from a family file");
  comp->add_option("--method", method, "direct|eq10|alpha|reflected|controlled4|all");

  FamilySource qkd_source;
  std::string protocol = "both";
  auto* qkd = app.add_subcommand("check-qkd", "Check the BB84 / E91 equations");
  qkd->add_option("--dim", qkd_source.dim, "Use the built-in MUB family of this dimension");
  qkd->add_option("--file", qkd_source.file, "Read the family from a family file");
  qkd->add_option("--protocol", protocol, "bb84|e91|both");

  MeanKingOptions mk;
  std::string mode = "verify";
  auto* king = app.add_subcommand("mean-king", "Construct, verify or simulate the Mean King scheme");
  king->add_option("--dim", mk.n, "Hilbert space dimension")->required();
  king->add_option("--mode", mode, "construct|verify|simulate");
  king->add_option("--basis", mk.basis, "King's basis (simulate)");
  king->add_option("--outcome", mk.outcome, "King's outcome (simulate)");
  king->add_flag("--corrupt-lookup", mk.corrupt_lookup, "Shift one lookup entry to break the scheme");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPassed;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    double tol = kDefaultTolerance;
    if (env_tol && !env_tol->empty()) {
      std::size_t used = 0;
      try {
        tol = std::stod(*env_tol, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != env_tol->size()) throw UsageError("VERIFIER_TOL is not a number: " + *env_tol);
    }
    if (tol_flag) tol = *tol_flag;
    if (!(tol >= 0.0)) throw UsageError("tolerance must be non-negative");

    const auto start = std::chrono::steady_clock::now();
    Report report;
    if (mub->parsed()) {
      report = cmd_mub(mub_dim, tol);
    } else if (comp->parsed()) {
      std::vector<ComplementarityMethod> methods;
      if (method == "all") {
        methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
      } else if (auto m = parse_method(method)) {
        methods.push_back(*m);
      } else {
        throw UsageError("unknown --method '" + method + "'");
      }
      report = cmd_complementary(comp_source, methods, tol);
    } else if (qkd->parsed()) {
      std::vector<Protocol> protocols;
      if (protocol == "bb84") {
        protocols = {Protocol::bb84};
      } else if (protocol == "e91") {
        protocols = {Protocol::e91};
      } else if (protocol == "both") {
        protocols = {Protocol::bb84, Protocol::e91};
      } else {
        throw UsageError("unknown --protocol '" + protocol + "'");
      }
      report = cmd_qkd(protocols, qkd_source, tol);
    } else {
      if (mode == "construct") {
        mk.mode = MeanKingMode::construct;
      } else if (mode == "verify") {
        mk.mode = MeanKingMode::verify;
      } else if (mode == "simulate") {
        mk.mode = MeanKingMode::simulate;
      } else {
        throw UsageError("unknown --mode '" + mode + "'");
      }
      report = cmd_meanking(mk, tol);
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    if (timing) report.wall_time_ms = elapsed.count();

    out << report.dump();
    if (!quiet) {
      std::size_t ok = 0;
      std::vector<std::string> failed;
      for (const auto& c : report.checks) {
        if (c.passed) {
          ++ok;
        } else {
          failed.push_back(c.name);
        }
      }
      err << report.command << ": " << (report.passed ? "PASSED" : "FAILED") << " (" << ok << "/"
          << report.checks.size() << " checks, " << elapsed.count() << " ms)\n";
      if (!failed.empty()) err << "  failed: " << join(failed) << "\n";
    }
    return report.passed ? kExitPassed : kExitFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cqv::cli
