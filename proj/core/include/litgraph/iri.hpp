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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace litgraph {

enum class Source;

// An absolute IRI. Construction validates: non-empty, has a scheme, no
// whitespace or characters N-Triples cannot carry inside <...>.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  static bool IsValid(std::string_view value);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

enum class EntityKind { kAuthor, kWork, kEdition, kCountry, kRole, kSubject };

std::string_view EntityKindName(EntityKind kind);

struct MintedParts {
  Source source;
  std::string source_id;
  EntityKind kind;
};

// Deterministic, injective entity IRIs of the form
// <base><kind>/<source>/<percent-encoded id>.
class IriMinter {
 public:
  static constexpr std::string_view kDefaultBase = "http://litgraph.local/";

  explicit IriMinter(std::string base = std::string(kDefaultBase));

  const std::string& base() const noexcept { return base_; }

  Iri Mint(Source source, std::string_view source_id, EntityKind kind) const;

  // Vocabulary-independent nodes: countries, roles and folksonomy subjects are
  // keyed by their label alone, e.g. <base>country/DZ.
  Iri MintKeyed(EntityKind kind, std::string_view key) const;

  // Inverse of Mint; nullopt for IRIs outside this minter's namespace.
  std::optional<MintedParts> Parse(const Iri& iri) const;

  // Inverse of MintKeyed.
  std::optional<std::string> ParseKeyed(const Iri& iri, EntityKind kind) const;

 private:
  std::string base_;
};

std::string PercentEncode(std::string_view raw);
std::string PercentDecode(std::string_view encoded);

}  // namespace litgraph
