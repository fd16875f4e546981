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

// True for exactly 13 ASCII digits whose mod-10 weighted (1,3,1,3,...) sum is
// divisible by 10.
bool IsValidIsbn13(std::string_view isbn);

// Strips hyphens and spaces; no validation.
std::string CompactIsbn(std::string_view isbn);

}  // namespace litgraph
