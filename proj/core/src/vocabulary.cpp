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

#include "litgraph/vocabulary.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "litgraph/error.hpp"

namespace litgraph {
namespace data {
extern const std::string_view kVocabularyJson;
}

namespace {

std::string Expand(const std::map<std::string, std::string>& prefixes, const std::string& curie) {
  auto colon = curie.find(':');
  if (colon != std::string::npos) {
    auto it = prefixes.find(curie.substr(0, colon));
    if (it != prefixes.end()) return it->second + curie.substr(colon + 1);
  }
  return curie;
}

}  // namespace

Vocabulary Vocabulary::FromJson(std::string_view json_text) {
  Vocabulary vocab;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("vocabulary: {}", e.what()));
  }
  for (const auto& [prefix, ns] : doc.at("prefixes").items()) {
    vocab.prefixes_[prefix] = ns.get<std::string>();
  }
  for (const auto& entry : doc.at("terms")) {
    VocabularyTerm term;
    term.name = entry.at("name").get<std::string>();
    term.iri = Iri(Expand(vocab.prefixes_, entry.at("iri").get<std::string>()));
    term.role = entry.at("kind").get<std::string>() == "class" ? TermRole::kClass
                                                               : TermRole::kProperty;
    term.derived = entry.value("derived", false);
    if (entry.contains("subclass_of")) {
      term.subclass_of = entry.at("subclass_of").get<std::string>();
    }
    if (vocab.by_name_.count(term.name) || vocab.by_iri_.count(term.iri.str())) {
      throw Error(ErrorCode::kParse, fmt::format("vocabulary: duplicate term {}", term.name));
    }
    vocab.by_name_.emplace(term.name, vocab.terms_.size());
    vocab.by_iri_.emplace(term.iri.str(), vocab.terms_.size());
    vocab.terms_.push_back(std::move(term));
  }
  return vocab;
}

const Vocabulary& Vocabulary::Default() {
  static const Vocabulary vocab = FromJson(data::kVocabularyJson);
  return vocab;
}

const VocabularyTerm* Vocabulary::Find(std::string_view short_name) const {
  auto it = by_name_.find(short_name);
  return it == by_name_.end() ? nullptr : &terms_[it->second];
}

const VocabularyTerm* Vocabulary::FindByIri(std::string_view iri) const {
  auto it = by_iri_.find(iri);
  return it == by_iri_.end() ? nullptr : &terms_[it->second];
}

const Iri& Vocabulary::Lookup(std::string_view short_name) const {
  if (const auto* term = Find(short_name)) return term->iri;
  throw Error(ErrorCode::kNotFound, fmt::format("unknown vocabulary term '{}'", short_name));
}

bool Vocabulary::IsDerivedPredicate(std::string_view iri) const {
  const auto* term = FindByIri(iri);
  return term != nullptr && term->derived;
}

std::string Vocabulary::Compact(std::string_view iri) const {
  for (const auto& [prefix, ns] : prefixes_) {
    if (iri.starts_with(ns) && iri.size() > ns.size()) {
      return fmt::format("{}:{}", prefix, iri.substr(ns.size()));
    }
  }
  return std::string(iri);
}

Term V(std::string_view short_name) { return Vocabulary::Default().Node(short_name); }

}  // namespace litgraph
