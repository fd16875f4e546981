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

#include <string>
#include <string_view>

namespace litgraph {

// Decodes UTF-8 into Unicode scalar values. Invalid sequences decode to
// U+FFFD, one per offending byte.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

struct NormalizeOptions {
  bool case_fold = false;
};

// NFC composition, trim, and collapse of internal whitespace runs to a single
// U+0020. Case is preserved unless case_fold is set.
std::string NormalizeName(std::string_view raw, NormalizeOptions options = {});

// Full Unicode case folding, no other changes.
std::string CaseFold(std::string_view text);

bool HasControlCharacters(std::string_view text);
bool IsBlank(std::string_view text);

}  // namespace litgraph
