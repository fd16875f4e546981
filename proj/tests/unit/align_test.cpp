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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "litgraph/error.hpp"

namespace litgraph::align {
namespace {

AlignmentCandidate Candidate(std::string left_id, Source target, std::string right_id, double sim,
                             Heuristic h) {
  AlignmentCandidate c;
  c.left = {Source::kWikidata, std::move(left_id), "L"};
  c.right = {target, std::move(right_id), "R"};
  c.similarity = sim;
  c.heuristic = h;
  return c;
}

std::vector<AlignmentCandidate> GeneratedCandidates(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  const Heuristic heuristics[] = {Heuristic::kPreexistingLink, Heuristic::kExactNameBirthYear,
                                  Heuristic::kSitemapNameMatch, Heuristic::kIsbnBridge};
  // Boundary values appear explicitly; the rest are uniform.
  const double pinned[] = {0.0, 0.69999999999, 0.7, 0.70000000001, 1.0};
  std::uniform_int_distribution<int> h(0, 3), pin(0, 9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<AlignmentCandidate> out;
  for (std::size_t i = 0; i < n; ++i) {
    int p = pin(rng);
    double sim = p < 5 ? pinned[p] : u(rng);
    out.push_back(Candidate("Q" + std::to_string(i), i % 2 ? Source::kGoodreads : Source::kOpenLibrary,
                            std::to_string(i), sim, heuristics[h(rng)]));
  }
  return out;
}

std::set<std::string> AcceptedIds(const std::vector<AlignmentCandidate>& cs) {
  std::set<std::string> ids;
  for (const auto& c : cs) {
    if (c.accepted) ids.insert(c.left.source_id);
  }
  return ids;
}

TEST(Threshold, AcceptedIsSimilarityAtLeastThresholdOrExactMatch) {
  auto candidates = GeneratedCandidates(3, 2000);
  auto out = ApplyThreshold(candidates, 0.7);
  ASSERT_EQ(out.size(), candidates.size());
  for (const auto& c : out) {
    bool expected = c.heuristic == Heuristic::kExactNameBirthYear || c.similarity >= 0.7;
    EXPECT_EQ(c.accepted, expected) << c.similarity << " " << HeuristicName(c.heuristic);
  }
}

TEST(Threshold, BoundaryIsInclusive) {
  auto out = ApplyThreshold({Candidate("Q1", Source::kGoodreads, "1", 0.7, Heuristic::kPreexistingLink),
                             Candidate("Q2", Source::kGoodreads, "2", 0.6999999, Heuristic::kSitemapNameMatch),
                             Candidate("Q3", Source::kOpenLibrary, "3", 0.1, Heuristic::kExactNameBirthYear)});
  EXPECT_TRUE(out[0].accepted);
  EXPECT_FALSE(out[1].accepted);
  EXPECT_TRUE(out[2].accepted);
}

TEST(Threshold, MonotoneInThreshold) {
  auto candidates = GeneratedCandidates(5, 1000);
  std::set<std::string> previous = AcceptedIds(ApplyThreshold(candidates, 0.0));
  for (int step = 1; step <= 20; ++step) {
    auto current = AcceptedIds(ApplyThreshold(candidates, step / 20.0));
    for (const auto& id : current) EXPECT_TRUE(previous.count(id)) << id << " at " << step / 20.0;
    previous = std::move(current);
  }
}

TEST(Threshold, RejectsOutOfRange) {
  for (double t : {-0.01, 1.01, std::nan("")}) {
    try {
      ApplyThreshold({}, t);
      FAIL() << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig);
    }
  }
  EXPECT_NO_THROW(ValidateThreshold(0.0));
  EXPECT_NO_THROW(ValidateThreshold(1.0));
}

TEST(Resolve, HighestSimilarityWinsThenSmallestId) {
  auto out = ResolveLinks(ApplyThreshold({
      Candidate("Q1", Source::kOpenLibrary, "OL2A", 0.9, Heuristic::kIsbnBridge),
      Candidate("Q1", Source::kOpenLibrary, "OL1A", 1.0, Heuristic::kIsbnBridge),
      Candidate("Q2", Source::kGoodreads, "20", 0.8, Heuristic::kIsbnBridge),
      Candidate("Q2", Source::kGoodreads, "10", 0.8, Heuristic::kSitemapNameMatch),
      Candidate("Q3", Source::kGoodreads, "30", 0.2, Heuristic::kSitemapNameMatch),
  }));
  ASSERT_EQ(out.accepted.size(), 2u);
  EXPECT_EQ(out.accepted[0].right.source_id, "OL1A");
  EXPECT_EQ(out.accepted[1].right.source_id, "10");
  ASSERT_EQ(out.conflicting.size(), 2u);
  ASSERT_EQ(out.rejected.size(), 1u);
  EXPECT_EQ(out.rejected[0].left.source_id, "Q3");
}

TEST(Resolve, DuplicatePairsCollapse) {
  auto out = ResolveLinks(ApplyThreshold({
      Candidate("Q1", Source::kGoodreads, "7", 1.0, Heuristic::kPreexistingLink),
      Candidate("Q1", Source::kGoodreads, "7", 1.0, Heuristic::kSitemapNameMatch),
  }));
  EXPECT_EQ(out.accepted.size(), 1u);
  EXPECT_TRUE(out.conflicting.empty());
}

TEST(Heuristics, ExactMatchNeedsNameAndYear) {
  KgAuthor a{"Q214582", "Chinua Achebe", 1930, {}};
  std::vector<connectors::AuthorCandidate> found = {
      {"OL3A", "Chinua Achebe", 1930}, {"OL4A", "Chinua Achebe", 1931},
      {"OL5A", "Chinua  Achebe", 1930}, {"OL6A", "Chinua Achebe", std::nullopt}};
  auto out = HeuristicExactMatch(a, found);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].right.source_id, "OL3A");
  EXPECT_EQ(out[0].heuristic, Heuristic::kExactNameBirthYear);
  a.birth_year.reset();
  EXPECT_TRUE(HeuristicExactMatch(a, found).empty());
}

TEST(Heuristics, SitemapMatchesByName) {
  std::vector<KgAuthor> authors = {{"Q1", "Slimane Azem", 1918, {}}, {"Q2", "Nobody", 1950, {}}};
  auto out = HeuristicSitemapMatch(authors, {{"900002", "Slimane Azem"}, {"5", "Other"}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].right.source_id, "900002");
  EXPECT_EQ(out[0].similarity, 1.0);
}

TEST(Heuristics, PreexistingLinksScoreAgainstPlatformName) {
  KgAuthor a{"Q4405658", "Esther Salaman", 1900, {{Source::kGoodreads, "618352"}}};
  NameDirectory names = {{{Source::kGoodreads, "618352"}, "Esther Polianowsky Salaman"}};
  auto out = PreexistingLinks({a}, names);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].similarity, 0.7, 1e-9);
  EXPECT_TRUE(ApplyThreshold(out)[0].accepted);
}

TEST(Heuristics, IsbnBridgeDeduplicatesAndWarns) {
  std::vector<KgAuthor> authors = {{"Q1", "Chinua Achebe", 1930, {}}};
  std::map<std::string, std::vector<std::string>> isbns = {{"Q1", {"a", "b", "c"}}};
  IsbnResolver resolver = [](const std::string& isbn, Source target) -> std::optional<std::string> {
    if (isbn == "c") throw Error(ErrorCode::kNetwork, "down");
    if (target == Source::kOpenLibrary) return std::nullopt;
    return std::string("900005");
  };
  NameDirectory names = {{{Source::kGoodreads, "900005"}, "Chinua Achebe"}};
  auto out = HeuristicIsbnBridge(authors, isbns, resolver, names);
  ASSERT_EQ(out.candidates.size(), 1u);
  EXPECT_EQ(out.candidates[0].right.source, Source::kGoodreads);
  EXPECT_EQ(out.candidates[0].similarity, 1.0);
  EXPECT_EQ(out.warnings.size(), 2u);
}

TEST(CandidatesCsv, RoundTrip) {
  auto candidates = ApplyThreshold(GeneratedCandidates(9, 50));
  candidates[0].left.name = "Ngũgĩ wa Thiong'o, \"Jr\"";
  std::stringstream buffer;
  WriteCandidatesCsv(buffer, candidates);
  auto back = ReadCandidatesCsv(buffer);
  ASSERT_EQ(back.size(), candidates.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].left, candidates[i].left);
    EXPECT_EQ(back[i].right, candidates[i].right);
    EXPECT_EQ(back[i].similarity, candidates[i].similarity);
    EXPECT_EQ(back[i].accepted, candidates[i].accepted);
  }
}

}  // namespace
}  // namespace litgraph::align
