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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litgraph/iri.hpp"

namespace litgraph {

// Bibliographic platforms plus the VIAF authority file. Works only ever come
// from the first three.
enum class Source { kWikidata, kOpenLibrary, kGoodreads, kViaf };

std::string_view SourceName(Source source);
std::optional<Source> ParseSource(std::string_view name);
bool IsWorkSource(Source source);

inline constexpr Source kWorkSources[] = {Source::kWikidata, Source::kOpenLibrary,
                                          Source::kGoodreads};

inline constexpr std::string_view kTransnationalRole = "Transnational";
inline constexpr std::string_view kTranslatorRole = "translator";

struct AuthorEntity {
  Iri iri;
  std::string name;
  int birth_year = 0;
  std::string birth_country;
  std::optional<int> death_year;
  std::vector<std::string> citizenships;
  std::optional<std::string> ethnic_group;
  std::optional<std::string> gender;
  std::vector<std::string> occupations;
  std::map<Source, std::string> external_ids;
  std::set<std::string> roles;
  std::optional<std::string> wikipedia_url;
};

struct AssociatedAgent {
  std::string name;
  std::string role;

  auto operator<=>(const AssociatedAgent&) const = default;
};

struct PublicationEvent {
  std::string event_id;  // graph-local, no global IRI
  std::optional<int> year;
  std::optional<std::string> country;
  std::optional<std::string> language;
  std::optional<std::string> publisher;
  std::vector<AssociatedAgent> associated_agents;

  bool HasContent() const {
    return year || country || language || publisher || !associated_agents.empty();
  }
};

struct Edition {
  Iri iri;
  Iri expression_iri;
  std::vector<std::string> isbn13;
  PublicationEvent publication;
};

struct WorkExpression {
  Iri iri;
  std::string source_id;
  std::string title;
  Iri author_iri;
  Source source = Source::kWikidata;
  std::optional<std::string> language;
  std::vector<std::string> subjects;
  std::optional<double> avg_rating;
  std::optional<long long> ratings_count;
  std::optional<long long> readers_count;
  std::vector<Iri> edition_iris;
};

// Web IRI of the record a unified entity was derived from, e.g.
// http://www.wikidata.org/entity/Q4405658.
std::string SourceRecordIri(Source source, std::string_view source_id, bool work);

}  // namespace litgraph
