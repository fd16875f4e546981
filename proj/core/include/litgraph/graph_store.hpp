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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "litgraph/term.hpp"

namespace litgraph::store {

// In-memory triple set with three access indexes (subject -> predicate ->
// objects, predicate -> object -> subjects, object -> predicate -> subjects)
// plus a label index. Terms are interned into dense ids.
//
// Writers and readers may interleave; each public call takes the store lock,
// so index updates are atomic with respect to readers.
class GraphStore {
 public:
  GraphStore() = default;
  GraphStore(const GraphStore&) = delete;
  GraphStore& operator=(const GraphStore&) = delete;

  bool Insert(const Triple& triple);
  std::size_t InsertAll(const std::vector<Triple>& triples);

  // Any unset position is a wildcard. Results are in canonical order.
  std::vector<Triple> Match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  bool Contains(const Triple& triple) const;
  bool HasNode(const Term& node) const;
  std::size_t size() const;

  // All triples, canonical order.
  std::vector<Triple> Triples() const;

  // One entry per (entity, rdfs:label) pair, canonical order.
  struct LabelEntry {
    std::string label;
    Term entity;
  };
  std::vector<LabelEntry> Labels() const;

  // Entities with a label whose case fold equals the key.
  std::vector<Term> EntitiesWithLabel(std::string_view folded_label) const;

  // Rebuilds the triple set from each index independently (for consistency
  // checks).
  struct IndexProjections {
    std::set<Triple> from_spo;
    std::set<Triple> from_pos;
    std::set<Triple> from_osp;
  };
  IndexProjections ProjectIndexes() const;

 private:
  using Id = std::uint32_t;
  struct Key {
    Id s, p, o;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::optional<Id> Find(const Term& term) const;
  Id Intern(const Term& term);
  Triple Materialize(const Key& key) const;
  std::vector<Triple> Sorted(std::vector<Key> keys) const;

  mutable std::shared_mutex mutex_;
  std::vector<Term> terms_;
  std::vector<std::string> sort_keys_;  // N-Triples form of each interned term
  std::unordered_map<Term, Id> ids_;
  std::unordered_map<Key, char, KeyHash> triples_;
  std::unordered_map<Id, std::map<Id, std::set<Id>>> spo_;
  std::unordered_map<Id, std::map<Id, std::set<Id>>> pos_;
  std::unordered_map<Id, std::map<Id, std::set<Id>>> osp_;
  std::map<std::string, std::set<Id>> label_index_;  // case-folded label -> subjects
};

enum class Direction { kOut, kIn, kBoth };

std::optional<Direction> ParseDirection(std::string_view text);
std::string_view DirectionName(Direction direction);

struct SearchHit {
  Term entity;
  std::string label;
  int rank = 0;  // 0 exact, 1 prefix, 2 substring
};

// Case-insensitive substring search over labels, ranked exact, prefix,
// substring; ties by label, then entity.
std::vector<SearchHit> SearchLabels(const GraphStore& store, std::string_view query,
                                    const std::optional<Term>& type_filter, std::size_t limit);

struct Edge {
  Term predicate;
  Term neighbor;
  Direction direction = Direction::kOut;
};

struct EdgeGroup {
  Term predicate;
  Direction direction = Direction::kOut;
  std::size_t count = 0;
};

struct Neighborhood {
  std::vector<Edge> items;
  std::size_t total = 0;
  std::vector<EdgeGroup> groups;
};

// A filter entry binds one predicate. Without a direction it follows the
// requested traversal direction; with one ("^p" parses to kIn) it selects
// that direction whatever was requested.
struct PredicateFilter {
  Term predicate;
  std::optional<Direction> direction;
};

// One-hop edges to non-literal neighbors: outgoing first, then incoming, each
// ordered by predicate then neighbor. Throws Error{kNotFound} for unknown
// entities.
Neighborhood Neighbors(const GraphStore& store, const Term& entity, Direction direction,
                       const std::vector<PredicateFilter>& filter, std::size_t limit,
                       std::size_t offset);

struct PlaceCount {
  std::string country;
  std::size_t count = 0;

  auto operator<=>(const PlaceCount&) const = default;
};

// Counts the author's expressions per derived publication country, descending
// by count, then by country code.
std::vector<PlaceCount> PublicationPlaces(const GraphStore& store, const Term& author);

// Published stores are immutable and shared; Swap replaces the snapshot
// without disturbing readers holding the old one.
class StoreHandle {
 public:
  explicit StoreHandle(std::shared_ptr<const GraphStore> store = nullptr);

  std::shared_ptr<const GraphStore> Get() const;
  void Swap(std::shared_ptr<const GraphStore> store);

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const GraphStore> store_;
};

}  // namespace litgraph::store
