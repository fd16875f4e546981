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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litgraph/iri.hpp"
#include "litgraph/term.hpp"

namespace litgraph {

enum class TermRole { kClass, kProperty };

struct VocabularyTerm {
  std::string name;  // short name, e.g. "frbr:embodiment"
  Iri iri;
  TermRole role = TermRole::kProperty;
  bool derived = false;
  std::optional<std::string> subclass_of;
};

// The closed set of classes and properties the graph may use. Loaded once
// from the bundled vocabulary file.
class Vocabulary {
 public:
  static const Vocabulary& Default();

  // Parses a vocabulary document (same schema as data/vocabulary.json).
  static Vocabulary FromJson(std::string_view json_text);

  // Throws Error{kNotFound} for names outside the documented set.
  const Iri& Lookup(std::string_view short_name) const;
  const VocabularyTerm* Find(std::string_view short_name) const;
  const VocabularyTerm* FindByIri(std::string_view iri) const;

  Term Node(std::string_view short_name) const { return Term::FromIri(Lookup(short_name)); }

  bool IsDerivedPredicate(std::string_view iri) const;
  bool Contains(std::string_view iri) const { return FindByIri(iri) != nullptr; }

  const std::vector<VocabularyTerm>& terms() const noexcept { return terms_; }
  const std::map<std::string, std::string>& prefixes() const noexcept { return prefixes_; }

  // "frbr:embodiment" for a vocabulary IRI, or the IRI itself.
  std::string Compact(std::string_view iri) const;

 private:
  std::vector<VocabularyTerm> terms_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::map<std::string, std::size_t, std::less<>> by_iri_;
  std::map<std::string, std::string> prefixes_;
};

// Shorthand for Vocabulary::Default().Node(name).
Term V(std::string_view short_name);

}  // namespace litgraph
