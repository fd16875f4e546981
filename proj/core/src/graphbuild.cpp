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

#include "litgraph/graphbuild.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "litgraph/error.hpp"
#include "litgraph/vocabulary.hpp"

namespace litgraph::graphbuild {

namespace {

constexpr std::string_view kExternalIdProperty[] = {"urw:wikidataId", "urw:openLibraryId",
                                                     "urw:goodreadsId", "urw:viafId"};

// Blank labels are restricted to [A-Za-z0-9_-.]; everything else, including
// '_', is hex-escaped so distinct ids never collide.
std::string BlankSafe(std::string_view raw) {
  std::string out;
  for (unsigned char c : raw) {
    if (std::isalnum(c) || c == '-') {
      out.push_back(static_cast<char>(c));
    } else {
      out += fmt::format("_{:02X}", c);
    }
  }
  return out;
}

void Add(std::vector<Triple>& out, const Term& s, std::string_view p, Term o) {
  out.push_back(Triple{s, V(p), std::move(o)});
}

}  // namespace

bool HasReception(const WorkExpression& work) {
  return work.ratings_count.value_or(0) >= 1 || work.readers_count.value_or(0) >= 1;
}

FilterResult ReceptionFilter(std::vector<WorkExpression> works) {
  FilterResult out;
  for (auto& w : works) (HasReception(w) ? out.kept : out.dropped).push_back(std::move(w));
  return out;
}

std::string PublicationNodeId(Source source, std::string_view edition_id) {
  return fmt::format("pub-{}-{}", SourceName(source), BlankSafe(edition_id));
}

TripleEmitter::TripleEmitter(IriMinter minter, const classify::RegionTable& regions)
    : minter_(std::move(minter)), regions_(regions) {}

Term TripleEmitter::Country(std::string_view code) const {
  return Term::FromIri(minter_.MintKeyed(EntityKind::kCountry, code));
}

Term TripleEmitter::Role(std::string_view label) const {
  return Term::FromIri(minter_.MintKeyed(EntityKind::kRole, label));
}

Term TripleEmitter::Subject(std::string_view label) const {
  return Term::FromIri(minter_.MintKeyed(EntityKind::kSubject, label));
}

std::vector<Triple> TripleEmitter::EmitAuthor(const AuthorEntity& author) const {
  std::vector<Triple> out;
  const Term s = Term::FromIri(author.iri);
  Add(out, s, "type", V("Person"));
  Add(out, s, "label", Term::String(author.name));
  Add(out, s, "urw:birthYear", Term::Integer(author.birth_year));
  if (!author.birth_country.empty()) Add(out, s, "urw:birthCountry", Country(author.birth_country));
  if (author.death_year) Add(out, s, "urw:deathYear", Term::Integer(*author.death_year));
  for (const auto& c : author.citizenships) Add(out, s, "urw:citizenship", Country(c));
  if (author.ethnic_group) Add(out, s, "urw:ethnicGroup", Term::String(*author.ethnic_group));
  if (author.gender) Add(out, s, "urw:gender", Term::String(*author.gender));
  for (const auto& o : author.occupations) Add(out, s, "urw:occupation", Term::String(o));
  for (const auto& role : author.roles) Add(out, s, "dul:hasRole", Role(role));
  if (author.wikipedia_url) Add(out, s, "urw:wikipediaPage", Term::FromIri(*author.wikipedia_url));
  for (const auto& [source, id] : author.external_ids) {
    Add(out, s, kExternalIdProperty[static_cast<int>(source)], Term::String(id));
    Add(out, s, "prov:wasDerivedFrom", Term::FromIri(SourceRecordIri(source, id, false)));
  }
  return out;
}

std::vector<Triple> TripleEmitter::EmitWork(const WorkExpression& work,
                                            const std::vector<Edition>& editions,
                                            const std::set<Iri>& known_authors) const {
  if (!known_authors.count(work.author_iri)) {
    throw Error(ErrorCode::kBuild,
                fmt::format("work {} '{}' references unknown author {}", work.iri.str(), work.title,
                            work.author_iri.str()));
  }
  std::vector<Triple> out;
  const Term s = Term::FromIri(work.iri);
  Add(out, s, "type", V("frbr:Expression"));
  Add(out, s, "label", Term::String(work.title));
  Add(out, s, "prov:wasAttributedTo", Term::FromIri(work.author_iri));
  Add(out, s, "prov:wasDerivedFrom", Term::FromIri(SourceRecordIri(work.source, work.source_id, true)));
  if (work.language) Add(out, s, "urb:language", Term::String(*work.language));
  for (const auto& subject : work.subjects) Add(out, s, "urb:subject", Subject(subject));
  if (work.avg_rating) Add(out, s, "urb:rated", Term::Decimal(*work.avg_rating));
  if (work.ratings_count) Add(out, s, "urb:numberOfRatings", Term::Integer(*work.ratings_count));
  if (work.readers_count) Add(out, s, "urb:numberOfReaders", Term::Integer(*work.readers_count));

  for (const auto& edition : editions) {
    const Term e = Term::FromIri(edition.iri);
    const PublicationEvent& pub = edition.publication;
    Add(out, s, "frbr:embodiment", e);
    Add(out, e, "type", V("Edition"));
    Add(out, e, "label",
        Term::String(pub.year ? fmt::format("{} edition", *pub.year) : std::string("edition")));
    for (const auto& isbn : edition.isbn13) Add(out, e, "urb:isbn13", Term::String(isbn));
    if (!pub.HasContent()) continue;

    const Term p = Term::Blank(pub.event_id);
    Add(out, e, "dul:isParticipantIn", p);
    Add(out, p, "type", V("urb:Publication"));
    if (pub.year) Add(out, p, "urb:year", Term::Integer(*pub.year));
    if (pub.country) Add(out, p, "urb:country", Country(*pub.country));
    if (pub.language) Add(out, p, "urb:language", Term::String(*pub.language));
    if (pub.publisher) Add(out, p, "urb:publishedBy", Term::String(*pub.publisher));
    auto agents = pub.associated_agents;
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    for (std::size_t k = 0; k < agents.size(); ++k) {
      const Term a = Term::Blank(fmt::format("{}-a{}", pub.event_id, k + 1));
      Add(out, p, "prov:wasAssociatedWith", a);
      Add(out, a, "type", V("prov:Agent"));
      Add(out, a, "label", Term::String(agents[k].name));
      Add(out, a, "dul:hasRole", Role(agents[k].role));
    }
  }
  return out;
}

std::vector<Triple> TripleEmitter::EmitReferencedNodes(const std::vector<Triple>& triples) const {
  std::set<Term> seen;
  std::vector<Triple> out;
  for (const auto& t : triples) {
    if (!t.object.is_iri() || !seen.insert(t.object).second) continue;
    Iri iri(t.object.value());
    if (auto code = minter_.ParseKeyed(iri, EntityKind::kCountry)) {
      Add(out, t.object, "type", V("dul:Place"));
      Add(out, t.object, "label", Term::String(regions_.CountryName(*code)));
    } else if (auto role = minter_.ParseKeyed(iri, EntityKind::kRole)) {
      Add(out, t.object, "type", V("dul:Role"));
      Add(out, t.object, "label", Term::String(*role));
    } else if (auto subject = minter_.ParseKeyed(iri, EntityKind::kSubject)) {
      Add(out, t.object, "type", V("urb:Folksonomy"));
      Add(out, t.object, "label", Term::String(*subject));
    }
  }
  return out;
}

std::vector<Triple> MaterializePropertyChains(const store::GraphStore& graph) {
  const Term embodiment = V("frbr:embodiment");
  const Term participant = V("dul:isParticipantIn");
  const Term associated = V("prov:wasAssociatedWith");
  const Term has_role = V("dul:hasRole");
  const Term label = V("label");
  const Term translator_label = Term::String(std::string(kTranslatorRole));
  const std::pair<std::string_view, std::string_view> attribute_chains[] = {
      {"urb:year", "urb:publicationYear"},
      {"urb:country", "urb:publicationCountry"},
      {"urb:publishedBy", "urb:publisher"},
  };

  std::set<Triple> derived;
  for (const auto& emb : graph.Match(std::nullopt, embodiment, std::nullopt)) {
    for (const auto& part : graph.Match(emb.object, participant, std::nullopt)) {
      const Term& pub = part.object;
      for (const auto& [attribute, shortcut] : attribute_chains) {
        for (const auto& value : graph.Match(pub, V(attribute), std::nullopt)) {
          derived.insert(Triple{emb.subject, V(shortcut), value.object});
        }
      }
      for (const auto& assoc : graph.Match(pub, associated, std::nullopt)) {
        for (const auto& role : graph.Match(assoc.object, has_role, std::nullopt)) {
          if (graph.Contains(Triple{role.object, label, translator_label})) {
            derived.insert(Triple{emb.subject, V("urb:translator"), assoc.object});
          }
        }
      }
    }
  }
  std::vector<Triple> out(derived.begin(), derived.end());
  std::sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

void WriteReportText(std::ostream& out, const BuildReport& r) {
  out << fmt::format("triples: {}\n", r.triples);
  out << fmt::format("asserted triples: {}\n", r.asserted_triples);
  out << fmt::format("derived triples: {}\n", r.derived_triples);
  out << fmt::format("authors: {}\n", r.authors);
  out << fmt::format("expressions seen: {}\n", r.expressions_seen);
  out << fmt::format("expressions kept: {}\n", r.expressions_kept);
  out << fmt::format("expressions dropped (no reception): {}\n", r.expressions_dropped);
  out << fmt::format("editions: {}\n", r.editions);
  out << fmt::format("publication events: {}\n", r.publication_events);
  out << fmt::format("works with unaligned authors: {}\n", r.unlinked_works);
  for (const auto& [source, c] : r.per_source) {
    out << fmt::format("{}: seen {} kept {} dropped {} editions {} publications {}\n",
                       SourceName(source), c.seen, c.kept, c.dropped, c.editions, c.publications);
  }
}

void WriteReportCsv(std::ostream& out, const BuildReport& r) {
  out << "scope,metric,value\n";
  auto row = [&](std::string_view scope, std::string_view metric, std::size_t v) {
    out << scope << ',' << metric << ',' << v << '\n';
  };
  row("total", "triples", r.triples);
  row("total", "asserted_triples", r.asserted_triples);
  row("total", "derived_triples", r.derived_triples);
  row("total", "authors", r.authors);
  row("total", "expressions_seen", r.expressions_seen);
  row("total", "expressions_kept", r.expressions_kept);
  row("total", "expressions_dropped", r.expressions_dropped);
  row("total", "editions", r.editions);
  row("total", "publication_events", r.publication_events);
  row("total", "unlinked_works", r.unlinked_works);
  for (const auto& [source, c] : r.per_source) {
    row(SourceName(source), "expressions_seen", c.seen);
    row(SourceName(source), "expressions_kept", c.kept);
    row(SourceName(source), "expressions_dropped", c.dropped);
    row(SourceName(source), "editions", c.editions);
    row(SourceName(source), "publication_events", c.publications);
  }
}

BuiltGraph Build(const BuildInput& input, const IriMinter& minter,
                 const classify::RegionTable& regions) {
  TripleEmitter emitter(minter, regions);
  BuildReport report;
  std::vector<Triple> asserted;

  std::set<Iri> known_authors;
  for (const auto& author : input.authors) {
    if (!known_authors.insert(author.iri).second) {
      throw Error(ErrorCode::kBuild, fmt::format("duplicate author {}", author.iri.str()));
    }
    auto triples = emitter.EmitAuthor(author);
    asserted.insert(asserted.end(), triples.begin(), triples.end());
  }
  report.authors = known_authors.size();

  std::map<Iri, std::vector<Edition>> editions_by_work;
  for (const auto& e : input.editions) editions_by_work[e.expression_iri].push_back(e);
  for (auto& [iri, list] : editions_by_work) {
    std::sort(list.begin(), list.end(), [](const Edition& a, const Edition& b) { return a.iri < b.iri; });
  }

  for (Source s : kWorkSources) report.per_source[s];
  report.expressions_seen = input.works.size();
  for (const auto& w : input.works) ++report.per_source[w.source].seen;
  auto filtered = ReceptionFilter(input.works);
  report.expressions_kept = filtered.kept.size();
  report.expressions_dropped = filtered.dropped.size();
  for (const auto& w : filtered.dropped) ++report.per_source[w.source].dropped;

  static const std::vector<Edition> kNoEditions;
  for (const auto& w : filtered.kept) {
    auto& counts = report.per_source[w.source];
    ++counts.kept;
    auto it = editions_by_work.find(w.iri);
    const auto& editions = it == editions_by_work.end() ? kNoEditions : it->second;
    for (const auto& e : editions) {
      ++counts.editions;
      ++report.editions;
      if (e.publication.HasContent()) {
        ++counts.publications;
        ++report.publication_events;
      }
    }
    auto triples = emitter.EmitWork(w, editions, known_authors);
    asserted.insert(asserted.end(), triples.begin(), triples.end());
  }
  auto referenced = emitter.EmitReferencedNodes(asserted);
  asserted.insert(asserted.end(), referenced.begin(), referenced.end());

  auto store = std::make_unique<store::GraphStore>();
  report.asserted_triples = store->InsertAll(asserted);
  auto derived = MaterializePropertyChains(*store);
  report.derived_triples = store->InsertAll(derived);
  report.triples = store->size();
  report.unlinked_works = input.unlinked_works;
  return BuiltGraph{std::move(store), report};
}

}  // namespace litgraph::graphbuild
