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

#include <gtest/gtest.h>

#include "litgraph/error.hpp"
#include "transnational_cases.hpp"

namespace litgraph::classify {
namespace {

AuthorEntity Author(const testing::TransnationalCase& c) {
  AuthorEntity a;
  a.iri = Iri("http://litgraph.local/author/wikidata/" + c.label);
  a.name = c.label;
  a.birth_country = c.birth_country;
  a.birth_year = c.birth_year;
  a.ethnic_group = c.ethnic_group;
  a.citizenships = c.citizenships;
  return a;
}

TEST(Transnational, TruthTable) {
  const auto& table = RegionTable::Default();
  for (const auto& c : testing::TransnationalCases()) {
    auto roles = ClassifyTransnational(Author(c), table);
    EXPECT_EQ(roles.count(std::string(kTransnationalRole)) == 1, c.expected) << c.label;
  }
}

TEST(Transnational, CitizenshipNeverChangesTheRole) {
  const auto& table = RegionTable::Default();
  for (const auto& c : testing::TransnationalCases()) {
    auto base = Author(c);
    auto expected = ClassifyTransnational(base, table);
    for (const auto& variant : testing::CitizenshipVariants()) {
      base.citizenships = variant;
      EXPECT_EQ(ClassifyTransnational(base, table), expected) << c.label;
    }
  }
}

TEST(Transnational, StaleRoleIsRemovedAndOthersKept) {
  auto a = Author(testing::TransnationalCases()[6]);
  a.roles = {"Transnational", "Nobel laureate"};
  EXPECT_EQ(ClassifyTransnational(a, RegionTable::Default()), std::set<std::string>{"Nobel laureate"});
}

TEST(Transnational, MissingCountryIsAnError) {
  auto a = Author(testing::TransnationalCases()[0]);
  a.birth_country = "ZZ";
  try {
    ClassifyTransnational(a, RegionTable::Default());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassification);
    EXPECT_NE(std::string(e.what()).find("ZZ"), std::string::npos);
  }
  a.birth_country.clear();
  EXPECT_THROW(ClassifyTransnational(a, RegionTable::Default()), Error);
}

TEST(RegionTable, CustomTableAndCutoffs) {
  auto t = RegionTable::FromCsv("country_code,region_class,name\nXA,latin_america_caribbean,Xa\n"
                                "XB,western,Xb\nXC,other,Xc\n",
                                "# comment\nGroup One\n");
  EXPECT_EQ(t.RegionOf("XA"), RegionClass::kLatinAmericaCaribbean);
  EXPECT_EQ(t.CountryName("XB"), "Xb");
  EXPECT_TRUE(IsTransnational({"XB", 1900, "Group One"}, t));
  EXPECT_FALSE(IsTransnational({"XB", 1900, "Group Two"}, t));
  EXPECT_FALSE(IsTransnational({"XC", 2000, "Group One"}, t));
  t.lat_am_since = 1900;
  EXPECT_FALSE(IsTransnational({"XA", 1899, std::nullopt}, t));
  EXPECT_TRUE(IsTransnational({"XA", 1900, std::nullopt}, t));
}

TEST(RegionTable, MalformedCsvIsRejected) {
  EXPECT_THROW(RegionTable::FromCsv("XA,atlantis\n", ""), Error);
}

}  // namespace
}  // namespace litgraph::classify
