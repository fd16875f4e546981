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
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "litgraph/iri.hpp"

namespace litgraph {

enum class TermKind : std::uint8_t { kIri, kBlank, kLiteral };

enum class LiteralType : std::uint8_t { kString, kLangString, kInteger, kDecimal, kOther };

// One RDF term. Literals carry their datatype IRI (or language tag) as part of
// their identity, so "5"^^xsd:integer and "5"^^xsd:string are different terms.
class Term {
 public:
  Term() = default;

  static Term FromIri(const Iri& iri) { return Term(TermKind::kIri, iri.str(), {}, {}); }
  static Term FromIri(std::string iri);
  static Term Blank(std::string label);
  static Term String(std::string value);
  static Term LangString(std::string value, std::string lang);
  static Term Integer(long long value);
  // Stores the shortest round-tripping fixed-point lexical form.
  static Term Decimal(double value);
  static Term Typed(std::string lexical, std::string datatype);

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::kIri; }
  bool is_blank() const noexcept { return kind_ == TermKind::kBlank; }
  bool is_literal() const noexcept { return kind_ == TermKind::kLiteral; }
  bool is_node() const noexcept { return kind_ != TermKind::kLiteral; }

  // IRI string, blank label (without "_:"), or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& lang() const noexcept { return lang_; }

  LiteralType literal_type() const;
  long long AsInteger() const;
  double AsDouble() const;

  // N-Triples serialization of this term; this is also the canonical sort key.
  std::string ToNTriples() const;

  auto operator<=>(const Term&) const = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype, std::string lang)
      : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)),
        lang_(std::move(lang)) {}

  TermKind kind_ = TermKind::kIri;
  std::string value_;
  std::string datatype_;
  std::string lang_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;

  std::string ToNTriples() const;
};

// Canonical order: subject, then predicate, then object, each compared as its
// serialized N-Triples string.
bool CanonicalLess(const Triple& a, const Triple& b);

namespace xsd {
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace xsd

std::string FormatDecimal(double value);

}  // namespace litgraph

template <>
struct std::hash<litgraph::Term> {
  std::size_t operator()(const litgraph::Term& t) const noexcept;
};
