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

#include "litgraph/ingest.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "litgraph/error.hpp"

namespace litgraph::ingest {
namespace {

const char* kAuthor =
    R"({"source":"wikidata","kind":"author","id":"Q130631","name":"  Jacques   Derrida ","birth_year":1930,)"
    R"("birth_country":"DZ","citizenships":["FR"],"occupations":["Q36180"],"external_ids":{"viaf":"1"}})";

TEST(ParseRecord, AuthorFieldsAndNormalization) {
  auto r = std::get<SourceAuthorRecord>(ParseRecordLine(kAuthor, Source::kWikidata));
  EXPECT_EQ(r.source_id, "Q130631");
  EXPECT_EQ(r.name, "Jacques Derrida");
  EXPECT_EQ(r.birth_year, 1930);
  EXPECT_EQ(r.birth_country, "DZ");
  EXPECT_EQ(r.citizenships, std::vector<std::string>{"FR"});
  EXPECT_EQ(r.external_ids.at(Source::kViaf), "1");
}

TEST(ParseRecord, RoundTripsThroughJsonLine) {
  auto a = ParseRecordLine(kAuthor, Source::kWikidata);
  auto b = ParseRecordLine(ToJsonLine(a), Source::kWikidata);
  EXPECT_EQ(ToJsonLine(a), ToJsonLine(b));
  const char* work =
      R"({"source":"goodreads","kind":"work","id":"1","author_id":"9","title":"T","avg_rating":3.5,)"
      R"("ratings_count":2,"editions":[{"id":"e","publish_year":1958,"isbn13":["978-0-435-90526-2"],)"
      R"("contributors":[{"name":"X","role":"translator"}]}]})";
  auto w = ParseRecordLine(work, Source::kGoodreads);
  auto& wr = std::get<SourceWorkRecord>(w);
  ASSERT_EQ(wr.editions.size(), 1u);
  EXPECT_EQ(wr.editions[0].isbn13, std::vector<std::string>{"9780435905262"});
  EXPECT_EQ(ToJsonLine(ParseRecordLine(ToJsonLine(w), Source::kGoodreads)), ToJsonLine(w));
}

TEST(ParseRecord, Rejections) {
  struct Case {
    const char* line;
    ErrorCode code;
  } cases[] = {
      {"{not json", ErrorCode::kParse},
      {"[1,2]", ErrorCode::kParse},
      {R"({"source":"openlibrary","kind":"author","id":"Q1","name":"x"})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"author","id":"Q1","name":"   "})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"author","id":"Q1","name":"x","birth_year":"1930"})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"author","id":"Q1","name":"x","birth_country":"Algeria"})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"painting","id":"Q1"})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"work","id":"W","author_id":"Q1","title":"t","avg_rating":4.0})", ErrorCode::kValidation},
      {R"({"source":"wikidata","kind":"work","id":"W","author_id":"Q1","title":"t","ratings_count":-1})", ErrorCode::kValidation},
      {R"({"source":"goodreads","kind":"work","id":"W","author_id":"1","title":"t","editions":[{"id":"e","isbn13":["9780435905263"]}]})", ErrorCode::kValidation},
  };
  for (const auto& c : cases) {
    Source expected = std::string(c.line).find("goodreads") != std::string::npos ? Source::kGoodreads : Source::kWikidata;
    try {
      ParseRecordLine(c.line, expected);
      ADD_FAILURE() << c.line;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), c.code) << c.line << ": " << e.what();
    }
  }
}

TEST(DumpReader, SkipsBadLinesAndDuplicates) {
  auto path = std::filesystem::temp_directory_path() / "litgraph_ingest_test.jsonl";
  {
    std::ofstream out(path);
    out << kAuthor << "\n\n{broken\n" << kAuthor << "\r\n";
    out << R"({"source":"wikidata","kind":"author","id":"Q2","name":"B"})" << "\n";
  }
  auto dump = ParseDump(path, Source::kWikidata);
  EXPECT_EQ(dump.records.size(), 2u);
  ASSERT_EQ(dump.errors.size(), 2u);
  EXPECT_EQ(dump.errors[0].line, 3u);
  EXPECT_EQ(dump.errors[1].line, 4u);
  EXPECT_EQ(RecordLine(dump.records[1]), 5u);
  std::filesystem::remove(path);
  EXPECT_THROW(ParseDump(path, Source::kWikidata), Error);
}

TEST(Selection, FirstFailingCheckIsCounted) {
  auto make = [](std::string id, std::vector<std::string> occ, std::optional<int> year,
                 std::optional<std::string> country) {
    SourceAuthorRecord r;
    r.source_id = std::move(id);
    r.name = "n";
    r.occupations = std::move(occ);
    r.birth_year = year;
    r.birth_country = std::move(country);
    return r;
  };
  auto result = SelectAuthors({
      make("keep", {"Q36180"}, 1809, "GB"),
      make("label", {"poet"}, 1950, "IN"),
      make("old", {"Q49757"}, 1808, "GB"),
      make("noyear", {"Q6625963"}, std::nullopt, "GB"),
      make("painter", {"Q1028181"}, 1700, std::nullopt),
      make("nocountry", {"Q36180"}, 1900, std::nullopt),
  });
  ASSERT_EQ(result.kept.size(), 2u);
  EXPECT_EQ(result.kept[0].source_id, "keep");
  EXPECT_EQ(result.rejected[RejectionReason::kOccupation], 1u);
  EXPECT_EQ(result.rejected[RejectionReason::kBirthYear], 2u);
  EXPECT_EQ(result.rejected[RejectionReason::kBirthCountry], 1u);
}

TEST(Occupations, ResolveCodesAndLabels) {
  const auto& t = OccupationTable::Default();
  EXPECT_EQ(t.Resolve("Q36180"), "writer");
  EXPECT_EQ(t.Resolve("novelist"), "novelist");
  EXPECT_EQ(t.Resolve("Q1028181"), std::nullopt);
}

}  // namespace
}  // namespace litgraph::ingest
