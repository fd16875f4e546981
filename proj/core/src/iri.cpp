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

#include "litgraph/iri.hpp"

#include <array>
#include <cctype>

#include <fmt/format.h>

#include "litgraph/error.hpp"
#include "litgraph/model.hpp"
#include "litgraph/unicode.hpp"

namespace litgraph {
namespace {

bool IsUnreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

constexpr std::array<std::string_view, 6> kKindNames = {"author", "work", "edition",
                                                        "country", "role", "subject"};

std::optional<EntityKind> ParseKind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<EntityKind>(i);
  }
  return std::nullopt;
}

void CheckKey(std::string_view key, std::string_view what) {
  if (IsBlank(key)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} must not be empty", what));
  }
  if (HasControlCharacters(key)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} contains control characters", what));
  }
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!IsValid(value_)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("not an absolute IRI: '{}'", value_));
  }
}

bool Iri::IsValid(std::string_view value) {
  auto colon = value.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(value[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    auto c = static_cast<unsigned char>(value[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == 0x7f) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

std::string_view EntityKindName(EntityKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::string PercentEncode(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (IsUnreserved(c)) {
      out.push_back(ch);
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

std::string PercentDecode(std::string_view encoded) {
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] == '%' && i + 2 < encoded.size()) {
      int hi = HexValue(encoded[i + 1]);
      int lo = HexValue(encoded[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(encoded[i]);
  }
  return out;
}

IriMinter::IriMinter(std::string base) : base_(std::move(base)) {
  if (base_.empty() || !Iri::IsValid(base_)) {
    throw Error(ErrorCode::kConfig, fmt::format("invalid namespace base '{}'", base_));
  }
  if (base_.back() != '/' && base_.back() != '#') base_.push_back('/');
}

Iri IriMinter::Mint(Source source, std::string_view source_id, EntityKind kind) const {
  CheckKey(source_id, "source_id");
  return Iri(fmt::format("{}{}/{}/{}", base_, EntityKindName(kind), SourceName(source),
                         PercentEncode(source_id)));
}

Iri IriMinter::MintKeyed(EntityKind kind, std::string_view key) const {
  CheckKey(key, "key");
  return Iri(fmt::format("{}{}/{}", base_, EntityKindName(kind), PercentEncode(key)));
}

std::optional<MintedParts> IriMinter::Parse(const Iri& iri) const {
  std::string_view rest = iri.str();
  if (!rest.starts_with(base_)) return std::nullopt;
  rest.remove_prefix(base_.size());
  auto first = rest.find('/');
  if (first == std::string_view::npos) return std::nullopt;
  auto second = rest.find('/', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  auto kind = ParseKind(rest.substr(0, first));
  auto source = ParseSource(rest.substr(first + 1, second - first - 1));
  if (!kind || !source) return std::nullopt;
  auto encoded = rest.substr(second + 1);
  std::string id = PercentDecode(encoded);
  if (id.empty() || PercentEncode(id) != encoded) return std::nullopt;
  return MintedParts{*source, std::move(id), *kind};
}

std::optional<std::string> IriMinter::ParseKeyed(const Iri& iri, EntityKind kind) const {
  std::string prefix = fmt::format("{}{}/", base_, EntityKindName(kind));
  std::string_view rest = iri.str();
  if (!rest.starts_with(prefix)) return std::nullopt;
  rest.remove_prefix(prefix.size());
  std::string key = PercentDecode(rest);
  if (key.empty() || PercentEncode(key) != rest) return std::nullopt;
  return key;
}

// --- model.hpp ---------------------------------------------------------------

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kWikidata: return "wikidata";
    case Source::kOpenLibrary: return "openlibrary";
    case Source::kGoodreads: return "goodreads";
    case Source::kViaf: return "viaf";
  }
  return "unknown";
}

std::optional<Source> ParseSource(std::string_view name) {
  if (name == "wikidata") return Source::kWikidata;
  if (name == "openlibrary") return Source::kOpenLibrary;
  if (name == "goodreads") return Source::kGoodreads;
  if (name == "viaf") return Source::kViaf;
  return std::nullopt;
}

bool IsWorkSource(Source source) { return source != Source::kViaf; }

std::string SourceRecordIri(Source source, std::string_view source_id, bool work) {
  std::string id = PercentEncode(source_id);
  switch (source) {
    case Source::kWikidata: return "http://www.wikidata.org/entity/" + id;
    case Source::kOpenLibrary:
      return (work ? "https://openlibrary.org/works/" : "https://openlibrary.org/authors/") + id;
    case Source::kGoodreads:
      return (work ? "https://www.goodreads.com/book/show/"
                   : "https://www.goodreads.com/author/show/") + id;
    case Source::kViaf: return "https://viaf.org/viaf/" + id;
  }
  return id;
}

}  // namespace litgraph
