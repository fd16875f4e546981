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

#include "litgraph/gestalt.hpp"

#include <gtest/gtest.h>

#include <random>

#include "litgraph/unicode.hpp"
#include "oracles.hpp"

namespace litgraph::align {
namespace {

using litgraph::testing::AllWords;
using litgraph::testing::RandomUnicode;
using litgraph::testing::ReferenceMatched;
using litgraph::testing::ReferenceSimilarity;

TEST(Gestalt, SalamanPairScoresSevenTenths) {
  EXPECT_NEAR(GestaltSimilarity("Esther Salaman", "Esther Polianowsky Salaman"), 0.7, 1e-9);
}

TEST(Gestalt, TieBreakPrefersEarliestBlock) {
  GestaltMatcher m;
  EXPECT_EQ(m.Similarity(U"abab", U"bab"), 6.0 / 7.0);
  auto blocks = m.MatchingBlocks(U"abab", U"bab");
  ASSERT_FALSE(blocks.empty());
  EXPECT_EQ(blocks.front(), (MatchingBlock{1, 0, 3}));
}

TEST(Gestalt, EmptyInputs) {
  GestaltMatcher m;
  EXPECT_EQ(m.Similarity(U"", U""), 1.0);
  EXPECT_EQ(m.Similarity(U"abc", U""), 0.0);
  EXPECT_EQ(m.Similarity(U"", U"abc"), 0.0);
  EXPECT_EQ(m.Similarity(U"abc", U"xyz"), 0.0);
  EXPECT_EQ(m.Similarity(U"same", U"same"), 1.0);
}

TEST(Gestalt, CountsScalarValuesNotBytes) {
  // "é" is two UTF-8 bytes but one scalar: 2*3/(4+3).
  EXPECT_EQ(GestaltSimilarity("café", "caf"), 6.0 / 7.0);
  EXPECT_EQ(GestaltSimilarity("\xF0\x9F\x98\x80", "\xF0\x9F\x98\x81"), 0.0);
}

TEST(Gestalt, BlocksCoverMatchedCharacters) {
  GestaltMatcher m;
  std::u32string a = U"Gabriel García Márquez", b = U"Gabriel Garcia Marquez";
  std::size_t total = 0;
  for (const auto& blk : m.MatchingBlocks(a, b)) {
    EXPECT_EQ(a.substr(blk.a_start, blk.length), b.substr(blk.b_start, blk.length));
    total += blk.length;
  }
  EXPECT_EQ(total, m.MatchedCharacters(a, b));
}

TEST(Gestalt, ExhaustiveShortWordsMatchReference) {
  auto words = AllWords(U"abc", 5);
  GestaltMatcher m;
  for (const auto& a : words) {
    for (const auto& b : words) {
      ASSERT_EQ(m.MatchedCharacters(a, b), ReferenceMatched(a, b)) << EncodeUtf8(a) << " / " << EncodeUtf8(b);
    }
  }
}

TEST(Gestalt, RandomUnicodeMatchesReference) {
  std::mt19937_64 rng(7);
  GestaltMatcher m;
  for (int i = 0; i < 2000; ++i) {
    auto a = RandomUnicode(rng, 32), b = RandomUnicode(rng, 32);
    ASSERT_EQ(m.Similarity(a, b), ReferenceSimilarity(a, b)) << EncodeUtf8(a) << " / " << EncodeUtf8(b);
    ASSERT_EQ(GestaltSimilarity(EncodeUtf8(a), EncodeUtf8(b)), ReferenceSimilarity(a, b));
  }
}

TEST(Gestalt, SimilarityStaysInUnitInterval) {
  std::mt19937_64 rng(11);
  GestaltMatcher m;
  for (int i = 0; i < 500; ++i) {
    auto a = RandomUnicode(rng, 16), b = RandomUnicode(rng, 16);
    double s = m.Similarity(a, b);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

}  // namespace
}  // namespace litgraph::align
