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

#include "litgraph/graph_store.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "litgraph/error.hpp"
#include "litgraph/iri.hpp"
#include "litgraph/unicode.hpp"
#include "litgraph/vocabulary.hpp"

namespace litgraph::store {

namespace {

const std::string& LabelIri() {
  static const std::string iri = Vocabulary::Default().Lookup("label").str();
  return iri;
}

std::string FoldLabel(std::string_view label) { return NormalizeName(label, {.case_fold = true}); }

}  // namespace

std::size_t GraphStore::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.s;
  h = h * 0x9E3779B97F4A7C15ULL ^ k.p;
  h = h * 0x9E3779B97F4A7C15ULL ^ k.o;
  return h;
}

std::optional<GraphStore::Id> GraphStore::Find(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

GraphStore::Id GraphStore::Intern(const Term& term) {
  auto [it, inserted] = ids_.emplace(term, static_cast<Id>(terms_.size()));
  if (inserted) {
    terms_.push_back(term);
    sort_keys_.push_back(term.ToNTriples());
  }
  return it->second;
}

bool GraphStore::Insert(const Triple& triple) {
  if (triple.subject.is_literal() || !triple.predicate.is_iri()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("invalid triple position in {}", triple.ToNTriples()));
  }
  std::unique_lock lock(mutex_);
  Key key{Intern(triple.subject), Intern(triple.predicate), Intern(triple.object)};
  if (!triples_.emplace(key, 0).second) return false;
  spo_[key.s][key.p].insert(key.o);
  pos_[key.p][key.o].insert(key.s);
  osp_[key.o][key.p].insert(key.s);
  if (triple.object.is_literal() && triple.predicate.value() == LabelIri()) {
    label_index_[FoldLabel(triple.object.value())].insert(key.s);
  }
  return true;
}

std::size_t GraphStore::InsertAll(const std::vector<Triple>& triples) {
  std::size_t added = 0;
  for (const auto& t : triples) added += Insert(t) ? 1 : 0;
  return added;
}

Triple GraphStore::Materialize(const Key& key) const {
  return Triple{terms_[key.s], terms_[key.p], terms_[key.o]};
}

std::vector<Triple> GraphStore::Sorted(std::vector<Key> keys) const {
  std::sort(keys.begin(), keys.end(), [this](const Key& a, const Key& b) {
    return std::tie(sort_keys_[a.s], sort_keys_[a.p], sort_keys_[a.o]) <
           std::tie(sort_keys_[b.s], sort_keys_[b.p], sort_keys_[b.o]);
  });
  std::vector<Triple> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(Materialize(k));
  return out;
}

std::vector<Triple> GraphStore::Match(const std::optional<Term>& s, const std::optional<Term>& p,
                                      const std::optional<Term>& o) const {
  std::shared_lock lock(mutex_);
  std::optional<Id> sid, pid, oid;
  if (s && !(sid = Find(*s))) return {};
  if (p && !(pid = Find(*p))) return {};
  if (o && !(oid = Find(*o))) return {};

  std::vector<Key> keys;
  if (sid) {
    auto si = spo_.find(*sid);
    if (si == spo_.end()) return {};
    for (const auto& [pp, objects] : si->second) {
      if (pid && pp != *pid) continue;
      if (oid) {
        if (objects.count(*oid)) keys.push_back({*sid, pp, *oid});
      } else {
        for (Id oo : objects) keys.push_back({*sid, pp, oo});
      }
    }
  } else if (pid) {
    auto pi = pos_.find(*pid);
    if (pi == pos_.end()) return {};
    if (oid) {
      auto oi = pi->second.find(*oid);
      if (oi == pi->second.end()) return {};
      for (Id ss : oi->second) keys.push_back({ss, *pid, *oid});
    } else {
      for (const auto& [oo, subjects] : pi->second) {
        for (Id ss : subjects) keys.push_back({ss, *pid, oo});
      }
    }
  } else if (oid) {
    auto oi = osp_.find(*oid);
    if (oi == osp_.end()) return {};
    for (const auto& [pp, subjects] : oi->second) {
      for (Id ss : subjects) keys.push_back({ss, pp, *oid});
    }
  } else {
    keys.reserve(triples_.size());
    for (const auto& [k, unused] : triples_) keys.push_back(k);
  }
  return Sorted(std::move(keys));
}

bool GraphStore::Contains(const Triple& triple) const {
  std::shared_lock lock(mutex_);
  auto s = Find(triple.subject), p = Find(triple.predicate), o = Find(triple.object);
  return s && p && o && triples_.count(Key{*s, *p, *o});
}

bool GraphStore::HasNode(const Term& node) const {
  std::shared_lock lock(mutex_);
  auto id = Find(node);
  return id && (spo_.count(*id) || osp_.count(*id));
}

std::size_t GraphStore::size() const {
  std::shared_lock lock(mutex_);
  return triples_.size();
}

std::vector<Triple> GraphStore::Triples() const { return Match(std::nullopt, std::nullopt, std::nullopt); }

std::vector<GraphStore::LabelEntry> GraphStore::Labels() const {
  std::vector<LabelEntry> out;
  for (const auto& t : Match(std::nullopt, Term::FromIri(LabelIri()), std::nullopt)) {
    if (t.object.is_literal()) out.push_back({t.object.value(), t.subject});
  }
  return out;
}

std::vector<Term> GraphStore::EntitiesWithLabel(std::string_view folded_label) const {
  std::shared_lock lock(mutex_);
  std::vector<Term> out;
  auto it = label_index_.find(std::string(folded_label));
  if (it == label_index_.end()) return out;
  for (Id id : it->second) out.push_back(terms_[id]);
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.ToNTriples() < b.ToNTriples(); });
  return out;
}

GraphStore::IndexProjections GraphStore::ProjectIndexes() const {
  std::shared_lock lock(mutex_);
  IndexProjections out;
  for (const auto& [s, by_p] : spo_)
    for (const auto& [p, objects] : by_p)
      for (Id o : objects) out.from_spo.insert(Materialize({s, p, o}));
  for (const auto& [p, by_o] : pos_)
    for (const auto& [o, subjects] : by_o)
      for (Id s : subjects) out.from_pos.insert(Materialize({s, p, o}));
  for (const auto& [o, by_p] : osp_)
    for (const auto& [p, subjects] : by_p)
      for (Id s : subjects) out.from_osp.insert(Materialize({s, p, o}));
  return out;
}

// --- queries ---------------------------------------------------------------------

std::optional<Direction> ParseDirection(std::string_view text) {
  if (text == "out") return Direction::kOut;
  if (text == "in") return Direction::kIn;
  if (text == "both") return Direction::kBoth;
  return std::nullopt;
}

std::string_view DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kOut: return "out";
    case Direction::kIn: return "in";
    case Direction::kBoth: return "both";
  }
  return "unknown";
}

std::vector<SearchHit> SearchLabels(const GraphStore& store, std::string_view query,
                                    const std::optional<Term>& type_filter, std::size_t limit) {
  const std::string needle = FoldLabel(query);
  if (needle.empty()) return {};
  const Term type = V("type");
  std::map<Term, SearchHit> best;
  for (const auto& entry : store.Labels()) {
    const std::string folded = FoldLabel(entry.label);
    int rank;
    if (folded == needle) {
      rank = 0;
    } else if (folded.starts_with(needle)) {
      rank = 1;
    } else if (folded.find(needle) != std::string::npos) {
      rank = 2;
    } else {
      continue;
    }
    auto it = best.find(entry.entity);
    if (it != best.end() &&
        std::tie(it->second.rank, it->second.label) <= std::tie(rank, entry.label)) {
      continue;
    }
    best[entry.entity] = SearchHit{entry.entity, entry.label, rank};
  }
  std::vector<SearchHit> hits;
  for (auto& [entity, hit] : best) {
    if (type_filter && !store.Contains(Triple{entity, type, *type_filter})) continue;
    hits.push_back(std::move(hit));
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.label != b.label) return a.label < b.label;
    return a.entity.ToNTriples() < b.entity.ToNTriples();
  });
  if (hits.size() > limit) hits.resize(limit);
  return hits;
}

Neighborhood Neighbors(const GraphStore& store, const Term& entity, Direction direction,
                       const std::vector<PredicateFilter>& filter, std::size_t limit,
                       std::size_t offset) {
  if (!store.HasNode(entity)) {
    throw Error(ErrorCode::kNotFound, fmt::format("unknown entity {}", entity.ToNTriples()));
  }
  // Plain filter entries follow the requested direction; an entry with an
  // explicit direction ("^p" selects incoming p edges) applies regardless.
  auto admitted = [&](const Term& predicate, Direction dir) {
    bool dir_ok = direction == Direction::kBoth || direction == dir;
    if (filter.empty()) return dir_ok;
    return std::any_of(filter.begin(), filter.end(), [&](const PredicateFilter& f) {
      return f.predicate == predicate && (f.direction ? *f.direction == dir : dir_ok);
    });
  };

  std::vector<Edge> edges;
  for (auto& t : store.Match(entity, std::nullopt, std::nullopt)) {
    if (t.object.is_node() && admitted(t.predicate, Direction::kOut)) {
      edges.push_back({std::move(t.predicate), std::move(t.object), Direction::kOut});
    }
  }
  std::vector<Edge> incoming;
  for (auto& t : store.Match(std::nullopt, std::nullopt, entity)) {
    if (admitted(t.predicate, Direction::kIn)) {
      incoming.push_back({std::move(t.predicate), std::move(t.subject), Direction::kIn});
    }
  }
  std::stable_sort(incoming.begin(), incoming.end(), [](const Edge& a, const Edge& b) {
    return std::make_pair(a.predicate.ToNTriples(), a.neighbor.ToNTriples()) <
           std::make_pair(b.predicate.ToNTriples(), b.neighbor.ToNTriples());
  });
  edges.insert(edges.end(), incoming.begin(), incoming.end());

  Neighborhood out;
  out.total = edges.size();
  for (const auto& e : edges) {
    if (!out.groups.empty() && out.groups.back().predicate == e.predicate &&
        out.groups.back().direction == e.direction) {
      ++out.groups.back().count;
    } else {
      out.groups.push_back({e.predicate, e.direction, 1});
    }
  }
  for (std::size_t i = offset; i < edges.size() && out.items.size() < limit; ++i) {
    out.items.push_back(edges[i]);
  }
  return out;
}

std::vector<PlaceCount> PublicationPlaces(const GraphStore& store, const Term& author) {
  if (!store.HasNode(author)) {
    throw Error(ErrorCode::kNotFound, fmt::format("unknown entity {}", author.ToNTriples()));
  }
  const Term attributed = V("prov:wasAttributedTo");
  const Term country = V("urb:publicationCountry");
  std::map<std::string, std::size_t> counts;
  for (const auto& work : store.Match(std::nullopt, attributed, author)) {
    std::set<std::string> codes;
    for (const auto& t : store.Match(work.subject, country, std::nullopt)) {
      std::string code = t.object.value();
      if (t.object.is_iri()) code = PercentDecode(code.substr(code.rfind('/') + 1));
      codes.insert(code);
    }
    for (const auto& code : codes) ++counts[code];
  }
  std::vector<PlaceCount> out;
  for (auto& [code, n] : counts) out.push_back({code, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const PlaceCount& a, const PlaceCount& b) { return a.count > b.count; });
  return out;
}

StoreHandle::StoreHandle(std::shared_ptr<const GraphStore> store) : store_(std::move(store)) {}

std::shared_ptr<const GraphStore> StoreHandle::Get() const {
  std::lock_guard lock(mutex_);
  return store_;
}

void StoreHandle::Swap(std::shared_ptr<const GraphStore> store) {
  std::lock_guard lock(mutex_);
  store_.swap(store);
  // The previous snapshot is released here, outside readers' copies.
}

}  // namespace litgraph::store
