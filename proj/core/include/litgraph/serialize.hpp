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

#include <filesystem>
#include <memory>
#include <optional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "litgraph/graph_store.hpp"
#include "litgraph/term.hpp"

namespace litgraph::rdf {

enum class Format { kNTriples, kTurtle };

std::optional<Format> ParseFormat(std::string_view name);

std::string EscapeLiteral(std::string_view value);

// One triple per line, canonical order, explicit datatypes on every literal.
void WriteNTriples(std::ostream& out, std::vector<Triple> triples);

// Groups by subject with prefixed names from the vocabulary; integers and
// decimals are written in their bare numeric form.
void WriteTurtle(std::ostream& out, std::vector<Triple> triples, const std::string& namespace_base);

// Throws Error{kParse} with the line number. Untyped literals read as
// xsd:string.
std::vector<Triple> ParseNTriples(std::string_view text);

// Reads the Turtle subset WriteTurtle produces plus the common shorthands:
// @prefix/PREFIX, prefixed names, "a", ";" and "," lists, numeric and boolean
// literals, long strings. Collections and [] property lists are rejected.
std::vector<Triple> ParseTurtle(std::string_view text);

std::vector<Triple> ReadFile(const std::filesystem::path& path);
std::vector<Triple> ReadFile(const std::filesystem::path& path, Format format);

struct ExportOptions {
  Format format = Format::kNTriples;
  bool include_derived = true;
  std::string namespace_base;
};

// Selects the triples to export (dropping derived-flagged predicates when
// asked) and writes them.
void Export(const store::GraphStore& store, std::ostream& out, const ExportOptions& options);
void ExportFile(const store::GraphStore& store, const std::filesystem::path& path,
                const ExportOptions& options);

std::unique_ptr<store::GraphStore> LoadStore(const std::filesystem::path& path);

}  // namespace litgraph::rdf
