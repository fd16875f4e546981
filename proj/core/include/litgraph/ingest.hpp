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
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "litgraph/model.hpp"

namespace litgraph::ingest {

struct Contributor {
  std::string name;
  std::string role;
};

struct SourceEditionRecord {
  std::string edition_id;
  std::optional<int> publish_year;
  std::optional<std::string> publish_country;
  std::optional<std::string> language;
  std::optional<std::string> publisher;
  std::vector<std::string> isbn13;
  std::vector<Contributor> contributors;
};

struct SourceAuthorRecord {
  Source source = Source::kWikidata;
  std::string source_id;
  std::string name;
  std::optional<int> birth_year;
  std::optional<std::string> birth_country;
  std::optional<int> death_year;
  std::vector<std::string> citizenships;
  std::optional<std::string> ethnic_group;
  std::optional<std::string> gender;
  std::vector<std::string> occupations;
  std::map<Source, std::string> external_ids;
  std::optional<std::string> wikipedia_url;
  std::size_t line = 0;
};

struct SourceWorkRecord {
  Source source = Source::kWikidata;
  std::string source_id;
  std::string author_source_id;
  std::string title;
  std::optional<std::string> language;
  std::vector<std::string> subjects;
  std::optional<double> avg_rating;
  std::optional<long long> ratings_count;
  std::optional<long long> readers_count;
  std::vector<SourceEditionRecord> editions;
  std::size_t line = 0;
};

using SourceRecord = std::variant<SourceAuthorRecord, SourceWorkRecord>;

std::size_t RecordLine(const SourceRecord& record);

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

// Streams one JSON Lines dump. Each call to Next() yields the next valid
// record; invalid lines are collected in errors() and skipped. Blank lines are
// ignored.
class DumpReader {
 public:
  DumpReader(const std::filesystem::path& path, Source expected_source);

  std::optional<SourceRecord> Next();

  const std::vector<RecordError>& errors() const noexcept { return errors_; }
  std::size_t lines_read() const noexcept { return line_; }

 private:
  std::ifstream in_;
  Source source_;
  std::size_t line_ = 0;
  std::set<std::pair<int, std::string>> seen_;
  std::vector<RecordError> errors_;
};

// Decodes a single line; throws Error{kParse} or Error{kValidation}.
SourceRecord ParseRecordLine(std::string_view line, Source expected_source);

struct ParsedDump {
  std::vector<SourceRecord> records;
  std::vector<RecordError> errors;
};

ParsedDump ParseDump(const std::filesystem::path& path, Source source);

// Serializes a record back to the dump schema (one line, no newline).
std::string ToJsonLine(const SourceRecord& record);

// Wikidata occupation codes and their labels.
struct OccupationTable {
  std::map<std::string, std::string, std::less<>> code_to_label;
  std::set<std::string, std::less<>> accepted_labels;

  static const OccupationTable& Default();

  // Resolves a code (Q36180) or a bare label (writer) to an accepted label.
  std::optional<std::string> Resolve(std::string_view occupation) const;
};

enum class RejectionReason { kOccupation, kBirthYear, kBirthCountry };

std::string_view RejectionReasonName(RejectionReason reason);

inline constexpr int kMinimumBirthYear = 1809;

struct SelectionResult {
  std::vector<SourceAuthorRecord> kept;
  std::map<RejectionReason, std::size_t> rejected;
};

// Keeps writers, novelists and poets born after 1808 whose birth country is
// known. Each rejected record is counted under its first failing check, in
// the order occupation, birth year, birth country.
SelectionResult SelectAuthors(const std::vector<SourceAuthorRecord>& records,
                              const OccupationTable& table = OccupationTable::Default());

std::optional<RejectionReason> CheckAuthor(const SourceAuthorRecord& record,
                                           const OccupationTable& table);

// VIAF isbn-list dump: one {"viaf_id", "wikidata_id", "isbn13": [...]} per line,
// keyed by Wikidata id.
struct ViafIsbnList {
  std::map<std::string, std::vector<std::string>> isbns_by_author;
  std::map<std::string, std::string> viaf_by_author;
  std::vector<RecordError> errors;
};

ViafIsbnList ParseViafIsbnList(const std::filesystem::path& path);

}  // namespace litgraph::ingest
