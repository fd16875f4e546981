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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace litgraph::csv {

using Row = std::vector<std::string>;

// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
void WriteRow(std::ostream& out, const Row& row);
std::string FormatRow(const Row& row);

// Reads all records; quoted fields may span lines. Throws Error{kParse} on an
// unterminated quote.
std::vector<Row> ReadAll(std::istream& in);
std::vector<Row> ParseText(std::string_view text);

}  // namespace litgraph::csv
