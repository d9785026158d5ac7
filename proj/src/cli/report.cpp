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
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cqv/cli.hpp"

namespace cqv::cli {

double round_report_value(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

void Report::add(CheckResult check) { checks.push_back(std::move(check)); }

void Report::finalize() {
  passed = !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

Json Report::to_json() const {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  j["passed"] = passed;
  j["tolerance"] = round_report_value(tolerance);
  j["wall_time_ms"] = wall_time_ms;
  Json list = Json::array();
  for (const auto& c : checks) {
    Json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["worst_violation"] = round_report_value(c.worst_violation);
    if (c.witness) {
      Json w = Json::object();
      for (const auto& [name, label] : *c.witness) w[name] = label;
      entry["witness"] = std::move(w);
    } else {
      entry["witness"] = nullptr;
    }
    list.push_back(std::move(entry));
  }
  j["checks"] = std::move(list);
  for (const auto& [key, value] : details.items()) j[key] = value;
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace cqv::cli
