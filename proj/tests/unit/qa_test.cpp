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

#include "litgraph/qa.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "litgraph/error.hpp"

namespace litgraph::align {
namespace {

std::vector<AlignmentCandidate> BucketedCandidates(std::size_t per_bucket) {
  std::vector<AlignmentCandidate> out;
  for (int b = 0; b < kBucketCount; ++b) {
    for (std::size_t i = 0; i < per_bucket; ++i) {
      AlignmentCandidate c;
      c.left = {Source::kWikidata, "Q" + std::to_string(b * 1000 + i), "Left " + std::to_string(i)};
      c.right = {Source::kGoodreads, std::to_string(b * 1000 + i), "Right " + std::to_string(i)};
      c.similarity = b / 10.0 + 0.05 * (static_cast<double>(i) / per_bucket) + 0.001;
      c.heuristic = Heuristic::kSitemapNameMatch;
      out.push_back(c);
    }
  }
  return out;
}

TEST(Qa, BucketsAreHalfOpen) {
  EXPECT_EQ(BucketOf(0.0), 0);
  EXPECT_EQ(BucketOf(0.0999), 0);
  EXPECT_EQ(BucketOf(0.1), 1);
  EXPECT_EQ(BucketOf(0.6), 6);
  EXPECT_EQ(BucketOf(0.6999999), 6);
  EXPECT_EQ(BucketOf(0.7), std::nullopt);
  EXPECT_EQ(BucketOf(-0.1), std::nullopt);
  EXPECT_EQ(BucketLabel(6), "[0.6,0.7)");
}

TEST(Qa, SamplingIsReproducibleForSeed) {
  auto candidates = BucketedCandidates(150);
  auto a = SampleForQa(candidates, 42, 100);
  auto b = SampleForQa(candidates, 42, 100);
  ASSERT_EQ(a.size(), static_cast<std::size_t>(kBucketCount));
  std::stringstream sa, sb;
  WriteWorksheet(sa, a);
  WriteWorksheet(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  for (const auto& s : a) EXPECT_EQ(s.pairs.size(), 100u);
  auto c = SampleForQa(candidates, 43, 100);
  std::stringstream sc;
  WriteWorksheet(sc, c);
  EXPECT_NE(sa.str(), sc.str());
}

TEST(Qa, SamplingIgnoresInputOrder) {
  auto candidates = BucketedCandidates(120);
  auto reversed = candidates;
  std::reverse(reversed.begin(), reversed.end());
  std::stringstream sa, sb;
  WriteWorksheet(sa, SampleForQa(candidates, 42, 100));
  WriteWorksheet(sb, SampleForQa(reversed, 42, 100));
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Qa, SmallBucketsAreTakenWhole) {
  auto samples = SampleForQa(BucketedCandidates(30), 42, 100);
  for (const auto& s : samples) {
    EXPECT_EQ(s.pairs.size(), 30u);
    std::set<std::string> ids;
    for (const auto& p : s.pairs) ids.insert(p.candidate.left.source_id);
    EXPECT_EQ(ids.size(), 30u);
  }
}

TEST(Qa, EightyNineOfHundredScoresPointEightNine) {
  auto samples = SampleForQa(BucketedCandidates(100), 42, 100);
  for (auto& s : samples) {
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
      s.pairs[i].annotation = (s.bucket != 6 || i < 89) ? Annotation::kCorrect : Annotation::kIncorrect;
    }
  }
  std::stringstream sheet;
  WriteWorksheet(sheet, samples);
  auto report = ScoreQa(ReadWorksheet(sheet));
  ASSERT_EQ(report.size(), static_cast<std::size_t>(kBucketCount));
  EXPECT_EQ(report[6].total, 100u);
  EXPECT_EQ(report[6].correct, 89u);
  ASSERT_TRUE(report[6].accuracy);
  EXPECT_NEAR(*report[6].accuracy, 0.89, 1e-12);
  EXPECT_NEAR(*report[0].accuracy, 1.0, 1e-12);
}

TEST(Qa, UnannotatedPairsAreRejected) {
  auto samples = SampleForQa(BucketedCandidates(3), 42, 100);
  try {
    ScoreQa(samples);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
}

TEST(Qa, UniformBelowStaysInRange) {
  std::uint64_t state = 42;
  std::vector<int> counts(7);
  for (int i = 0; i < 7000; ++i) {
    auto v = UniformBelow(7, state);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_GT(c, 800);
}

}  // namespace
}  // namespace litgraph::align
