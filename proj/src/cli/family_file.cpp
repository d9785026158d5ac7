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

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cqv/cli.hpp"
#include "cqv/gf.hpp"

namespace cqv::cli {

namespace {

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

ControlledFamily parse_family(std::string_view text, double tol) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!skippable(line)) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> UsageError {
    return UsageError("family file line " + std::to_string(line_no) + ": " + what);
  };

  if (!next_line()) throw UsageError("family file is empty");
  std::istringstream header(line);
  std::string dim_kw, count_kw, extra;
  long long m = 0, count = 0;
  if (!(header >> dim_kw >> m >> count_kw >> count) || dim_kw != "dim" || count_kw != "count" ||
      (header >> extra)) {
    throw fail("expected header 'dim <m> count <N>'");
  }
  if (m <= 0 || count <= 0 || m > 81 || count > 128) {
    throw fail("dimension and basis count must be positive (dim <= 81, count <= 128)");
  }
  const auto dim = static_cast<std::size_t>(m);
  const auto bases_count = static_cast<std::size_t>(count);

  std::vector<ComplexMatrix> bases;
  for (std::size_t a = 0; a < bases_count; ++a) {
    ComplexMatrix basis(dim, dim);
    for (std::size_t t = 0; t < dim; ++t) {
      if (!next_line()) throw fail("unexpected end of file, expected basis vector");
      std::istringstream row(line);
      for (std::size_t x = 0; x < dim; ++x) {
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) {
          throw fail("expected " + std::to_string(dim) + " 're im' pairs");
        }
        basis(x, t) = Complex(re, im);
      }
      if (row >> extra) throw fail("trailing data after " + std::to_string(dim) + " entries");
    }
    bases.push_back(std::move(basis));
  }
  if (next_line()) throw fail("unexpected data after the last basis");
  try {
    return make_family(dim, std::move(bases), tol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("family file: ") + e.what());
  }
}

ControlledFamily read_family_file(const std::filesystem::path& path, double tol) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open family file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_family(buffer.str(), tol);
}

std::string format_family(const ControlledFamily& family) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "dim " << family.dim() << " count " << family.size() << "\n";
  for (const auto& basis : family.bases()) {
    for (std::size_t t = 0; t < family.dim(); ++t) {
      for (std::size_t x = 0; x < family.dim(); ++x) {
        if (x > 0) os << "  ";
        os << basis(x, t).real() << " " << basis(x, t).imag();
      }
      os << "\n";
    }
  }
  return os.str();
}

ControlledFamily load_family(const FamilySource& source, double tol) {
  if (source.file && source.dim) throw UsageError("give either --dim or --file, not both");
  if (source.file) return read_family_file(*source.file, tol);
  if (!source.dim) throw UsageError("one of --dim or --file is required");
  if (!mub_supported(*source.dim)) {
    throw UsageError("unsupported dimension " + std::to_string(*source.dim) +
                     " (supported: 2, 3, 4, 5, 7, 8, 9)");
  }
  return mub_family(*source.dim);
}

}  // namespace cqv::cli
