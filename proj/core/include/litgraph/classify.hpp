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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "litgraph/model.hpp"

namespace litgraph::classify {

enum class RegionClass { kLatinAmericaCaribbean, kAfricaAsiaFormerColony, kWestern, kOther };

std::string_view RegionClassName(RegionClass region);
std::optional<RegionClass> ParseRegionClass(std::string_view name);

struct RegionTable {
  std::map<std::string, RegionClass, std::less<>> regions;
  std::map<std::string, std::string, std::less<>> country_names;
  int lat_am_since = 1808;
  int africa_asia_since = 1917;
  std::set<std::string, std::less<>> minority_groups;

  // The bundled defaults (data/regions.csv, data/minority_groups.txt).
  static const RegionTable& Default();

  // CSV: country_code,region_class[,name] with an optional header row.
  static RegionTable FromCsv(std::string_view regions_csv, std::string_view minority_groups);
  static RegionTable Load(const std::filesystem::path& regions_csv,
                          const std::filesystem::path& minority_groups);

  // Throws Error{kClassification} naming the country when it is missing.
  RegionClass RegionOf(std::string_view country_code) const;
  std::string CountryName(std::string_view country_code) const;
};

// The inputs the role depends on. Citizenship is deliberately absent.
struct BirthFacts {
  std::string birth_country;
  int birth_year = 0;
  std::optional<std::string> ethnic_group;
};

bool IsTransnational(const BirthFacts& facts, const RegionTable& table);

// Returns author.roles plus "Transnational" when the rule holds.
std::set<std::string> ClassifyTransnational(const AuthorEntity& author, const RegionTable& table);

}  // namespace litgraph::classify
