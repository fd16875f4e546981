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
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "litgraph/classify.hpp"
#include "litgraph/graph_store.hpp"
#include "litgraph/iri.hpp"
#include "litgraph/model.hpp"
#include "litgraph/term.hpp"

namespace litgraph::graphbuild {

// A work is kept iff it has at least one rating or at least one reader.
bool HasReception(const WorkExpression& work);

struct FilterResult {
  std::vector<WorkExpression> kept;
  std::vector<WorkExpression> dropped;
};

FilterResult ReceptionFilter(std::vector<WorkExpression> works);

// Graph-local node id of the publication event of an edition.
std::string PublicationNodeId(Source source, std::string_view edition_id);

class TripleEmitter {
 public:
  TripleEmitter(IriMinter minter, const classify::RegionTable& regions);

  std::vector<Triple> EmitAuthor(const AuthorEntity& author) const;

  // Throws Error{kBuild} naming the work when its author is not in
  // known_authors.
  std::vector<Triple> EmitWork(const WorkExpression& work, const std::vector<Edition>& editions,
                               const std::set<Iri>& known_authors) const;

  // Type and label triples for the country, role and subject nodes
  // referenced by the emitted triples.
  std::vector<Triple> EmitReferencedNodes(const std::vector<Triple>& triples) const;

  const IriMinter& minter() const noexcept { return minter_; }

 private:
  Term Country(std::string_view code) const;
  Term Role(std::string_view label) const;
  Term Subject(std::string_view label) const;

  IriMinter minter_;
  const classify::RegionTable& regions_;
};

// For each expression -frbr:embodiment-> edition -dul:isParticipantIn->
// publication path: urb:publicationYear, urb:publicationCountry and
// urb:publisher from the publication's attributes, and urb:translator for
// each associated agent holding the translator role. Set semantics, canonical
// order.
std::vector<Triple> MaterializePropertyChains(const store::GraphStore& graph);

struct SourceCounts {
  std::size_t seen = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::size_t editions = 0;
  std::size_t publications = 0;
};

struct BuildReport {
  std::size_t triples = 0;
  std::size_t asserted_triples = 0;
  std::size_t derived_triples = 0;
  std::size_t authors = 0;
  std::size_t expressions_seen = 0;
  std::size_t expressions_kept = 0;
  std::size_t expressions_dropped = 0;
  std::size_t editions = 0;
  std::size_t publication_events = 0;
  std::size_t unlinked_works = 0;  // author not aligned; never reach the filter
  std::map<Source, SourceCounts> per_source;
};

void WriteReportText(std::ostream& out, const BuildReport& report);
void WriteReportCsv(std::ostream& out, const BuildReport& report);

struct BuildInput {
  std::vector<AuthorEntity> authors;
  std::vector<WorkExpression> works;
  std::vector<Edition> editions;
  std::size_t unlinked_works = 0;
};

struct BuiltGraph {
  std::unique_ptr<store::GraphStore> store;
  BuildReport report;
};

BuiltGraph Build(const BuildInput& input, const IriMinter& minter,
                 const classify::RegionTable& regions);

}  // namespace litgraph::graphbuild
