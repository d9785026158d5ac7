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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cqv/diagrams.hpp"
#include "cqv/families.hpp"
#include "cqv/qkd.hpp"

namespace cqv::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "v1";

enum ExitCode : int { kExitPassed = 0, kExitFailed = 1, kExitUsage = 2 };

/// Bad input from the user: unsupported dimension, malformed file, missing
/// flag. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_violation = 0.0;
  std::optional<NamedAssignment> witness;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  bool passed = false;
  std::vector<CheckResult> checks;
  double tolerance = kDefaultTolerance;
  std::int64_t wall_time_ms = 0;
  /// Command-specific payload, appended after the common fields.
  Json details = Json::object();

  void add(CheckResult check);
  /// passed = all checks passed (and there is at least one).
  void finalize();
  Json to_json() const;
  /// Two-space indented JSON followed by a newline.
  std::string dump() const;
};

/// Rounds to 12 significant digits so reports are stable across runs.
double round_report_value(double x);

// Family files:
//   dim <m> count <N>
//   then N*m lines, each holding m complex entries as "re im" pairs; line
//   a*m + t is basis vector t of basis a. Blank lines and lines starting
//   with '#' are ignored.
ControlledFamily parse_family(std::string_view text, double tol = kDefaultTolerance);
ControlledFamily read_family_file(const std::filesystem::path& path,
                                  double tol = kDefaultTolerance);
std::string format_family(const ControlledFamily& family);

struct FamilySource {
  std::optional<std::size_t> dim;
  std::optional<std::filesystem::path> file;
};

ControlledFamily load_family(const FamilySource& source, double tol);

Report cmd_mub(std::size_t n, double tol);
Report cmd_complementary(const FamilySource& source,
                         const std::vector<ComplementarityMethod>& methods, double tol);
Report cmd_qkd(const std::vector<Protocol>& protocols, const FamilySource& source, double tol);

enum class MeanKingMode { construct, verify, simulate };

struct MeanKingOptions {
  std::size_t n = 2;
  MeanKingMode mode = MeanKingMode::verify;
  std::optional<std::size_t> basis;
  std::optional<std::size_t> outcome;
  bool corrupt_lookup = false;
};

Report cmd_meanking(const MeanKingOptions& options, double tol);

/// Full command-line entry point. Writes the JSON report to `out` and the
/// human-readable summary or errors to `err`; returns the exit code.
/// `env_tol` is the value of VERIFIER_TOL, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_tol = std::nullopt);

}  // namespace cqv::cli
