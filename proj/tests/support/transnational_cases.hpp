// Copyright 2026 The litgraph Authors.
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

// Boundary cases for the Transnational rule over the bundled region table.

#include <optional>
#include <string>
#include <vector>

namespace litgraph::testing {

struct TransnationalCase {
  std::string label;
  std::string birth_country;
  int birth_year;
  std::optional<std::string> ethnic_group;
  std::vector<std::string> citizenships;
  bool expected;
};

inline const std::vector<TransnationalCase>& TransnationalCases() {
  static const std::vector<TransnationalCase> cases = {
      {"latin_america_1807", "CO", 1807, std::nullopt, {"CO"}, false},
      {"latin_america_1808", "CO", 1808, std::nullopt, {"CO"}, true},
      {"caribbean_1808", "JM", 1808, std::nullopt, {"GB"}, true},
      {"africa_asia_1916", "NG", 1916, std::nullopt, {"GB"}, false},
      {"africa_asia_1917", "NG", 1917, std::nullopt, {"NG"}, true},
      {"western_minority", "US", 1931, "African Americans", {"US"}, true},
      {"western_no_minority", "GB", 1965, std::nullopt, {"GB"}, false},
      {"western_unlisted_group", "GB", 1965, "Scottish people", {"GB"}, false},
      {"birth_colony_citizen_west", "DZ", 1930, std::nullopt, {"FR"}, true},
      {"birth_west_citizen_colony", "FR", 1930, std::nullopt, {"DZ", "SN"}, false},
  };
  return cases;
}

// Citizenship lists to substitute when checking that citizenship is ignored.
inline const std::vector<std::vector<std::string>>& CitizenshipVariants() {
  static const std::vector<std::vector<std::string>> variants = {
      {}, {"FR"}, {"DZ"}, {"US", "NG"}, {"NG", "US"}, {"CO", "IN", "GB"}, {"TR"}};
  return variants;
}

}  // namespace litgraph::testing
