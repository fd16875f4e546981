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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace litgraph::align {

struct MatchingBlock {
  std::size_t a_start = 0;
  std::size_t b_start = 0;
  std::size_t length = 0;

  auto operator<=>(const MatchingBlock&) const = default;
};

// Ratcliff/Obershelp pattern matching without junk heuristics. Sequences are
// compared as Unicode scalar values. The matcher keeps its scratch buffers
// between calls, so reuse one instance when scoring many pairs on a thread.
class GestaltMatcher {
 public:
  // Sum of matched block lengths.
  std::size_t MatchedCharacters(std::u32string_view a, std::u32string_view b);

  // Blocks in discovery order: the longest common substring first, then the
  // left remainders, then the right remainders (depth-first).
  std::vector<MatchingBlock> MatchingBlocks(std::u32string_view a, std::u32string_view b);

  // 2*Km / (|a| + |b|); 1.0 when both are empty.
  double Similarity(std::u32string_view a, std::u32string_view b);

 private:
  // Longest common substring in a[alo,ahi) x b[blo,bhi), ties resolved by the
  // smallest start in a, then in b.
  MatchingBlock Longest(std::u32string_view a, std::size_t alo, std::size_t ahi,
                        std::u32string_view b, std::size_t blo, std::size_t bhi);

  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  template <typename Visit>
  void Walk(std::u32string_view a, std::u32string_view b, Visit&& visit);

  std::vector<std::size_t> previous_;
  std::vector<std::size_t> current_;
  std::vector<Range> pending_;
};

// UTF-8 convenience wrapper around GestaltMatcher::Similarity.
double GestaltSimilarity(std::string_view a, std::string_view b);

}  // namespace litgraph::align
