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

#include "litgraph/classify.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "litgraph/csv.hpp"
#include "litgraph/error.hpp"
#include "litgraph/unicode.hpp"

namespace litgraph {
namespace data {
extern const std::string_view kDefaultRegionsCsv;
extern const std::string_view kDefaultMinorityGroups;
}  // namespace data

namespace classify {

std::string_view RegionClassName(RegionClass region) {
  switch (region) {
    case RegionClass::kLatinAmericaCaribbean: return "latin_america_caribbean";
    case RegionClass::kAfricaAsiaFormerColony: return "africa_asia_former_colony";
    case RegionClass::kWestern: return "western";
    case RegionClass::kOther: return "other";
  }
  return "unknown";
}

std::optional<RegionClass> ParseRegionClass(std::string_view name) {
  for (auto r : {RegionClass::kLatinAmericaCaribbean, RegionClass::kAfricaAsiaFormerColony,
                 RegionClass::kWestern, RegionClass::kOther}) {
    if (RegionClassName(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

std::string Trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

RegionTable RegionTable::FromCsv(std::string_view regions_csv, std::string_view minority_groups) {
  RegionTable table;
  auto rows = csv::ParseText(regions_csv);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.empty() || (row.size() == 1 && Trim(row[0]).empty())) continue;
    if (i == 0 && Trim(row[0]) == "country_code") continue;
    if (row.size() < 2) {
      throw Error(ErrorCode::kConfig, fmt::format("region table row {}: expected country_code,region_class", i + 1));
    }
    auto code = Trim(row[0]);
    auto region = ParseRegionClass(Trim(row[1]));
    if (code.size() != 2 || !region) {
      throw Error(ErrorCode::kConfig, fmt::format("region table row {}: bad entry '{},{}'", i + 1, row[0], row[1]));
    }
    if (!table.regions.emplace(code, *region).second) {
      throw Error(ErrorCode::kConfig, fmt::format("region table: country {} listed twice", code));
    }
    if (row.size() > 2 && !Trim(row[2]).empty()) table.country_names[code] = Trim(row[2]);
  }
  std::istringstream groups{std::string(minority_groups)};
  std::string line;
  while (std::getline(groups, line)) {
    auto label = Trim(line);
    if (label.empty() || label.front() == '#') continue;
    table.minority_groups.insert(NormalizeName(label));
  }
  return table;
}

RegionTable RegionTable::Load(const std::filesystem::path& regions_csv,
                              const std::filesystem::path& minority_groups) {
  auto regions = regions_csv.empty() ? std::string(data::kDefaultRegionsCsv) : ReadText(regions_csv);
  auto groups = minority_groups.empty() ? std::string(data::kDefaultMinorityGroups)
                                        : ReadText(minority_groups);
  return FromCsv(regions, groups);
}

const RegionTable& RegionTable::Default() {
  static const RegionTable table = FromCsv(data::kDefaultRegionsCsv, data::kDefaultMinorityGroups);
  return table;
}

RegionClass RegionTable::RegionOf(std::string_view country_code) const {
  auto it = regions.find(country_code);
  if (it == regions.end()) {
    throw Error(ErrorCode::kClassification,
                fmt::format("country '{}' is not in the region table", country_code));
  }
  return it->second;
}

std::string RegionTable::CountryName(std::string_view country_code) const {
  auto it = country_names.find(country_code);
  return it == country_names.end() ? std::string(country_code) : it->second;
}

bool IsTransnational(const BirthFacts& facts, const RegionTable& table) {
  switch (table.RegionOf(facts.birth_country)) {
    case RegionClass::kLatinAmericaCaribbean:
      return facts.birth_year >= table.lat_am_since;
    case RegionClass::kAfricaAsiaFormerColony:
      return facts.birth_year >= table.africa_asia_since;
    case RegionClass::kWestern:
      return facts.ethnic_group.has_value() &&
             table.minority_groups.count(NormalizeName(*facts.ethnic_group)) > 0;
    case RegionClass::kOther:
      return false;
  }
  return false;
}

std::set<std::string> ClassifyTransnational(const AuthorEntity& author, const RegionTable& table) {
  if (author.birth_country.empty()) {
    throw Error(ErrorCode::kClassification,
                fmt::format("author {} has no birth country", author.iri.str()));
  }
  auto roles = author.roles;
  roles.erase(std::string(kTransnationalRole));
  BirthFacts facts{author.birth_country, author.birth_year, author.ethnic_group};
  if (IsTransnational(facts, table)) roles.insert(std::string(kTransnationalRole));
  return roles;
}

}  // namespace classify
}  // namespace litgraph
