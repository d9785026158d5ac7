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

#include <string>
#include <vector>

#include "cqv/families.hpp"
#include "cqv/gf.hpp"

namespace cqv::testing {

struct CorpusEntry {
  std::string name;
  ControlledFamily family;
  bool complementary;
};

// Seven MUB families, {Z,Z}, {Z,X} and three seeded perturbations.
inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (std::size_t n : kMubDimensions) out.push_back({"mub" + std::to_string(n), mub_family(n), true});
  out.push_back({"zz", make_family(2, {computational_basis(2), computational_basis(2)}), false});
  out.push_back({"zx", make_family(2, {computational_basis(2), fourier_basis(2)}), true});
  out.push_back({"perturbed2", perturbed_family(mub_family(2), 11), false});
  out.push_back({"perturbed3", perturbed_family(mub_family(3), 23), false});
  out.push_back({"perturbed4", perturbed_family(mub_family(4), 37), false});
  return out;
}

}  // namespace cqv::testing
