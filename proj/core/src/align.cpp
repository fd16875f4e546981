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

#include "litgraph/align.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "litgraph/csv.hpp"
#include "litgraph/error.hpp"
#include "litgraph/gestalt.hpp"

namespace litgraph::align {

std::string_view HeuristicName(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::kPreexistingLink: return "preexisting_link";
    case Heuristic::kExactNameBirthYear: return "exact_name_birthyear";
    case Heuristic::kSitemapNameMatch: return "sitemap_name_match";
    case Heuristic::kIsbnBridge: return "isbn_bridge";
  }
  return "unknown";
}

std::optional<Heuristic> ParseHeuristic(std::string_view name) {
  for (auto h : {Heuristic::kPreexistingLink, Heuristic::kExactNameBirthYear,
                 Heuristic::kSitemapNameMatch, Heuristic::kIsbnBridge}) {
    if (HeuristicName(h) == name) return h;
  }
  return std::nullopt;
}

double ScoreNames(std::string_view a, std::string_view b) { return GestaltSimilarity(a, b); }

namespace {

EntityRef Left(const KgAuthor& author) {
  return EntityRef{Source::kWikidata, author.wikidata_id, author.name};
}

AlignmentCandidate MakeCandidate(const KgAuthor& author, Source target, std::string id,
                                 std::string name, Heuristic heuristic) {
  AlignmentCandidate candidate;
  candidate.left = Left(author);
  candidate.right = EntityRef{target, std::move(id), std::move(name)};
  candidate.similarity = ScoreNames(candidate.left.name, candidate.right.name);
  candidate.heuristic = heuristic;
  return candidate;
}

std::string NameOf(const NameDirectory& names, Source source, const std::string& id) {
  auto it = names.find({source, id});
  return it == names.end() ? std::string() : it->second;
}

bool IsSimilarityGated(Heuristic heuristic) {
  return heuristic != Heuristic::kExactNameBirthYear;
}

}  // namespace

std::vector<AlignmentCandidate> PreexistingLinks(const std::vector<KgAuthor>& authors,
                                                 const NameDirectory& names) {
  std::vector<AlignmentCandidate> out;
  for (const auto& author : authors) {
    for (Source target : {Source::kOpenLibrary, Source::kGoodreads}) {
      auto it = author.external_ids.find(target);
      if (it == author.external_ids.end()) continue;
      out.push_back(MakeCandidate(author, target, it->second, NameOf(names, target, it->second),
                                  Heuristic::kPreexistingLink));
    }
  }
  return out;
}

std::vector<AlignmentCandidate> HeuristicExactMatch(
    const KgAuthor& author, const std::vector<connectors::AuthorCandidate>& candidates,
    Source target) {
  std::vector<AlignmentCandidate> out;
  if (!author.birth_year) return out;
  for (const auto& c : candidates) {
    if (c.name == author.name && c.birth_year && *c.birth_year == *author.birth_year) {
      out.push_back(MakeCandidate(author, target, c.author_id, c.name, Heuristic::kExactNameBirthYear));
    }
  }
  return out;
}

std::vector<AlignmentCandidate> HeuristicExactMatch(
    const std::vector<KgAuthor>& authors,
    const std::map<std::string, std::vector<connectors::AuthorCandidate>>& candidates_by_author,
    Source target) {
  std::vector<AlignmentCandidate> out;
  for (const auto& author : authors) {
    auto it = candidates_by_author.find(author.wikidata_id);
    if (it == candidates_by_author.end()) continue;
    auto found = HeuristicExactMatch(author, it->second, target);
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::vector<AlignmentCandidate> HeuristicSitemapMatch(
    const std::vector<KgAuthor>& authors, const std::vector<connectors::SitemapEntry>& sitemap) {
  std::map<std::string_view, const connectors::SitemapEntry*> by_name;
  for (const auto& entry : sitemap) by_name.emplace(entry.name, &entry);
  std::vector<AlignmentCandidate> out;
  for (const auto& author : authors) {
    auto it = by_name.find(author.name);
    if (it == by_name.end()) continue;
    out.push_back(MakeCandidate(author, Source::kGoodreads, it->second->author_id, it->second->name,
                                Heuristic::kSitemapNameMatch));
  }
  return out;
}

IsbnBridgeResult HeuristicIsbnBridge(const std::vector<KgAuthor>& authors,
                                     const std::map<std::string, std::vector<std::string>>& viaf_isbns,
                                     const IsbnResolver& resolver, const NameDirectory& names,
                                     const std::vector<Source>& targets) {
  IsbnBridgeResult result;
  for (const auto& author : authors) {
    auto isbns = viaf_isbns.find(author.wikidata_id);
    if (isbns == viaf_isbns.end()) continue;
    for (Source target : targets) {
      std::set<std::string> resolved;
      for (const auto& isbn : isbns->second) {
        try {
          if (auto id = resolver(isbn, target)) resolved.insert(*id);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kReplayMiss) throw;
          result.warnings.push_back(fmt::format("{} isbn {} on {}: {}", author.wikidata_id, isbn,
                                                SourceName(target), e.what()));
        }
      }
      for (const auto& id : resolved) {
        result.candidates.push_back(
            MakeCandidate(author, target, id, NameOf(names, target, id), Heuristic::kIsbnBridge));
      }
    }
  }
  return result;
}

void ValidateThreshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kConfig, fmt::format("threshold {} is outside [0,1]", threshold));
  }
}

std::vector<AlignmentCandidate> ApplyThreshold(std::vector<AlignmentCandidate> candidates,
                                               double threshold) {
  ValidateThreshold(threshold);
  for (auto& c : candidates) {
    c.accepted = !IsSimilarityGated(c.heuristic) || c.similarity >= threshold;
  }
  return candidates;
}

bool CandidateLess(const AlignmentCandidate& a, const AlignmentCandidate& b) {
  return std::tie(a.left.source_id, a.right.source, a.right.source_id, a.heuristic, a.left.name,
                  a.right.name, a.similarity, a.accepted) <
         std::tie(b.left.source_id, b.right.source, b.right.source_id, b.heuristic, b.left.name,
                  b.right.name, b.similarity, b.accepted);
}

ResolvedLinks ResolveLinks(const std::vector<AlignmentCandidate>& thresholded) {
  ResolvedLinks out;
  // (left id, target, target id) -> best candidate for that pair.
  std::map<std::tuple<std::string, Source, std::string>, AlignmentCandidate> pairs;
  for (const auto& c : thresholded) {
    if (!c.accepted) {
      out.rejected.push_back(c);
      continue;
    }
    auto key = std::make_tuple(c.left.source_id, c.right.source, c.right.source_id);
    auto [it, inserted] = pairs.emplace(key, c);
    if (!inserted) {
      auto& kept = it->second;
      if (c.similarity > kept.similarity ||
          (c.similarity == kept.similarity && c.heuristic < kept.heuristic)) {
        kept = c;
      }
    }
  }
  // (left id, target) -> winner
  std::map<std::pair<std::string, Source>, AlignmentCandidate> winners;
  for (const auto& [key, c] : pairs) {
    auto slot = std::make_pair(c.left.source_id, c.right.source);
    auto it = winners.find(slot);
    if (it == winners.end()) {
      winners.emplace(slot, c);
      continue;
    }
    auto& current = it->second;
    bool better = c.similarity > current.similarity ||
                  (c.similarity == current.similarity && c.right.source_id < current.right.source_id);
    if (better) {
      out.conflicting.push_back(current);
      current = c;
    } else {
      out.conflicting.push_back(c);
    }
  }
  for (auto& [slot, c] : winners) out.accepted.push_back(c);
  std::sort(out.accepted.begin(), out.accepted.end(), CandidateLess);
  std::sort(out.rejected.begin(), out.rejected.end(), CandidateLess);
  std::sort(out.conflicting.begin(), out.conflicting.end(), CandidateLess);
  return out;
}

std::string FormatSimilarity(double similarity) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), similarity);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, ptr);
}

namespace {

const csv::Row kCandidateHeader = {"left_source", "left_id",    "left_name",
                                   "right_source", "right_id",  "right_name",
                                   "similarity",  "heuristic", "accepted"};

double ParseDouble(const std::string& text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse, fmt::format("not a number: '{}'", text));
  }
  return value;
}

Source RequireSource(const std::string& text) {
  auto source = ParseSource(text);
  if (!source) throw Error(ErrorCode::kParse, fmt::format("unknown source '{}'", text));
  return *source;
}

}  // namespace

void WriteCandidatesCsv(std::ostream& out, const std::vector<AlignmentCandidate>& candidates) {
  csv::WriteRow(out, kCandidateHeader);
  for (const auto& c : candidates) {
    csv::WriteRow(out, {std::string(SourceName(c.left.source)), c.left.source_id, c.left.name,
                        std::string(SourceName(c.right.source)), c.right.source_id, c.right.name,
                        FormatSimilarity(c.similarity), std::string(HeuristicName(c.heuristic)),
                        c.accepted ? "true" : "false"});
  }
}

std::vector<AlignmentCandidate> ReadCandidatesCsv(std::istream& in) {
  auto rows = csv::ReadAll(in);
  std::vector<AlignmentCandidate> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && row == kCandidateHeader) continue;
    if (row.size() != kCandidateHeader.size()) {
      throw Error(ErrorCode::kParse, fmt::format("candidates csv row {}: expected {} fields", i + 1,
                                                 kCandidateHeader.size()));
    }
    AlignmentCandidate c;
    c.left = EntityRef{RequireSource(row[0]), row[1], row[2]};
    c.right = EntityRef{RequireSource(row[3]), row[4], row[5]};
    c.similarity = ParseDouble(row[6]);
    auto heuristic = ParseHeuristic(row[7]);
    if (!heuristic) throw Error(ErrorCode::kParse, fmt::format("unknown heuristic '{}'", row[7]));
    c.heuristic = *heuristic;
    c.accepted = row[8] == "true";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace litgraph::align
