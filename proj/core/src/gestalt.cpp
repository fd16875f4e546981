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

#include <algorithm>

#include "litgraph/unicode.hpp"

namespace litgraph::align {

MatchingBlock GestaltMatcher::Longest(std::u32string_view a, std::size_t alo, std::size_t ahi,
                                      std::u32string_view b, std::size_t blo, std::size_t bhi) {
  const std::size_t width = bhi - blo;
  const std::size_t cap = std::min(ahi - alo, width);
  // Column k + 1 holds the length of the common run ending at b[blo + k].
  previous_.assign(width + 1, 0);
  current_.resize(width + 1);
  current_[0] = 0;
  MatchingBlock best{alo, blo, 0};
  for (std::size_t i = alo; i < ahi; ++i) {
    const char32_t c = a[i];
    const std::size_t* prev = previous_.data();
    std::size_t* cur = current_.data();
    for (std::size_t k = 0; k < width; ++k) {
      // Branch-free: the mismatch pattern is data dependent.
      const std::size_t run = (prev[k] + 1) & (std::size_t{0} - static_cast<std::size_t>(b[blo + k] == c));
      cur[k + 1] = run;
      // Strict comparison keeps the earliest end in a, then in b, which for
      // equal lengths is also the earliest start.
      if (run > best.length) best = MatchingBlock{i + 1 - run, blo + k + 1 - run, run};
    }
    // Nothing can be strictly longer than the shorter side.
    if (best.length == cap) break;
    previous_.swap(current_);
  }
  return best;
}

template <typename Visit>
void GestaltMatcher::Walk(std::u32string_view a, std::u32string_view b, Visit&& visit) {
  pending_.clear();
  pending_.push_back({0, a.size(), 0, b.size()});
  while (!pending_.empty()) {
    Range r = pending_.back();
    pending_.pop_back();
    if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
    MatchingBlock block = Longest(a, r.alo, r.ahi, b, r.blo, r.bhi);
    if (block.length == 0) continue;
    visit(block);
    // Right remainder is pushed first so the left one is explored first.
    pending_.push_back({block.a_start + block.length, r.ahi, block.b_start + block.length, r.bhi});
    pending_.push_back({r.alo, block.a_start, r.blo, block.b_start});
  }
}

std::vector<MatchingBlock> GestaltMatcher::MatchingBlocks(std::u32string_view a,
                                                          std::u32string_view b) {
  std::vector<MatchingBlock> blocks;
  Walk(a, b, [&](const MatchingBlock& block) { blocks.push_back(block); });
  return blocks;
}

std::size_t GestaltMatcher::MatchedCharacters(std::u32string_view a, std::u32string_view b) {
  if (a == b) return a.size();
  std::size_t total = 0;
  Walk(a, b, [&](const MatchingBlock& block) { total += block.length; });
  return total;
}

double GestaltMatcher::Similarity(std::u32string_view a, std::u32string_view b) {
  const std::size_t total_length = a.size() + b.size();
  if (total_length == 0) return 1.0;
  return 2.0 * static_cast<double>(MatchedCharacters(a, b)) / static_cast<double>(total_length);
}

double GestaltSimilarity(std::string_view a, std::string_view b) {
  thread_local GestaltMatcher matcher;
  return matcher.Similarity(DecodeUtf8(a), DecodeUtf8(b));
}

}  // namespace litgraph::align
