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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litgraph/connectors.hpp"
#include "litgraph/model.hpp"

namespace litgraph::align {

enum class Heuristic { kPreexistingLink, kExactNameBirthYear, kSitemapNameMatch, kIsbnBridge };

std::string_view HeuristicName(Heuristic heuristic);
std::optional<Heuristic> ParseHeuristic(std::string_view name);

struct EntityRef {
  Source source = Source::kWikidata;
  std::string source_id;
  std::string name;

  auto operator<=>(const EntityRef&) const = default;
};

struct AlignmentCandidate {
  EntityRef left;   // knowledge-graph (Wikidata) author
  EntityRef right;  // target platform author
  double similarity = 0.0;
  Heuristic heuristic = Heuristic::kPreexistingLink;
  bool accepted = false;

  auto operator<=>(const AlignmentCandidate&) const = default;
};

inline constexpr double kDefaultThreshold = 0.7;

// Knowledge-graph side of the alignment: one normalized author.
struct KgAuthor {
  std::string wikidata_id;
  std::string name;
  std::optional<int> birth_year;
  std::map<Source, std::string> external_ids;
};

// (source, id) -> normalized display name for target-platform authors.
using NameDirectory = std::map<std::pair<Source, std::string>, std::string>;

double ScoreNames(std::string_view a, std::string_view b);

// Links already present on the Wikidata record.
std::vector<AlignmentCandidate> PreexistingLinks(const std::vector<KgAuthor>& authors,
                                                 const NameDirectory& names);

// Emits a candidate iff the names are byte-identical and both birth years are
// present and equal.
std::vector<AlignmentCandidate> HeuristicExactMatch(
    const KgAuthor& author, const std::vector<connectors::AuthorCandidate>& candidates,
    Source target = Source::kOpenLibrary);

std::vector<AlignmentCandidate> HeuristicExactMatch(
    const std::vector<KgAuthor>& authors,
    const std::map<std::string, std::vector<connectors::AuthorCandidate>>& candidates_by_author,
    Source target = Source::kOpenLibrary);

std::vector<AlignmentCandidate> HeuristicSitemapMatch(
    const std::vector<KgAuthor>& authors, const std::vector<connectors::SitemapEntry>& sitemap);

// Resolves ISBN -> platform author id; throws on connector failure.
using IsbnResolver = std::function<std::optional<std::string>(const std::string& isbn, Source target)>;

struct IsbnBridgeResult {
  std::vector<AlignmentCandidate> candidates;
  std::vector<std::string> warnings;
};

// One candidate per distinct resolved (author, target, id). Connector errors
// for an ISBN become warnings, except replay misses, which propagate.
IsbnBridgeResult HeuristicIsbnBridge(const std::vector<KgAuthor>& authors,
                                     const std::map<std::string, std::vector<std::string>>& viaf_isbns,
                                     const IsbnResolver& resolver, const NameDirectory& names,
                                     const std::vector<Source>& targets = {Source::kOpenLibrary,
                                                                           Source::kGoodreads});

// Sets accepted on every candidate: similarity >= threshold for the
// similarity-gated heuristics, always for exact_name_birthyear. Throws
// Error{kConfig} for thresholds outside [0,1].
std::vector<AlignmentCandidate> ApplyThreshold(std::vector<AlignmentCandidate> candidates,
                                               double threshold = kDefaultThreshold);

void ValidateThreshold(double threshold);

// Final accepted links: duplicates of a pair collapse to one, and when a KG
// author has several accepted ids on one platform the highest similarity wins
// (ties: smallest target id). Output is canonically ordered.
struct ResolvedLinks {
  std::vector<AlignmentCandidate> accepted;
  std::vector<AlignmentCandidate> rejected;     // below threshold
  std::vector<AlignmentCandidate> conflicting;  // accepted but lost a conflict
};

ResolvedLinks ResolveLinks(const std::vector<AlignmentCandidate>& thresholded);

// Canonical ordering used by every alignment output file.
bool CandidateLess(const AlignmentCandidate& a, const AlignmentCandidate& b);

// CSV columns: left_source,left_id,left_name,right_source,right_id,right_name,
// similarity,heuristic,accepted
void WriteCandidatesCsv(std::ostream& out, const std::vector<AlignmentCandidate>& candidates);
std::vector<AlignmentCandidate> ReadCandidatesCsv(std::istream& in);

std::string FormatSimilarity(double similarity);

}  // namespace litgraph::align
