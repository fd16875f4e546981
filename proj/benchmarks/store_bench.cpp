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

#include <benchmark/benchmark.h>

#include <random>

#include "litgraph/graph_store.hpp"
#include "litgraph/graphbuild.hpp"
#include "litgraph/vocabulary.hpp"

namespace {

using litgraph::Term;
using litgraph::Triple;
using litgraph::store::GraphStore;

// Expression -> edition -> publication chains with a few attributes each.
std::vector<Triple> PublicationGraph(std::size_t works) {
  using litgraph::V;
  std::vector<Triple> out;
  for (std::size_t w = 0; w < works; ++w) {
    auto work = Term::FromIri("http://ex.org/work/" + std::to_string(w));
    out.push_back({work, V("type"), V("frbr:Expression")});
    out.push_back({work, V("label"), Term::String("Work " + std::to_string(w))});
    out.push_back({work, V("prov:wasAttributedTo"), Term::FromIri("http://ex.org/author/" + std::to_string(w % 97))});
    for (int e = 0; e < 2; ++e) {
      auto ed = Term::FromIri("http://ex.org/edition/" + std::to_string(w) + "-" + std::to_string(e));
      auto pub = Term::Blank("pub-" + std::to_string(w) + "-" + std::to_string(e));
      out.push_back({work, V("frbr:embodiment"), ed});
      out.push_back({ed, V("dul:isParticipantIn"), pub});
      out.push_back({pub, V("urb:year"), Term::Integer(1900 + static_cast<long long>(w % 120))});
      out.push_back({pub, V("urb:country"), Term::FromIri("http://ex.org/country/" + std::to_string(w % 50))});
    }
  }
  return out;
}

void BM_Insert(benchmark::State& state) {
  auto triples = PublicationGraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    GraphStore g;
    benchmark::DoNotOptimize(g.InsertAll(triples));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(triples.size()));
}
BENCHMARK(BM_Insert)->Arg(1000)->Arg(10000);

void BM_MatchBoundSubject(benchmark::State& state) {
  auto triples = PublicationGraph(10000);
  GraphStore g;
  g.InsertAll(triples);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.Match(triples[pick(rng)].subject, std::nullopt, std::nullopt));
  }
}
BENCHMARK(BM_MatchBoundSubject);

void BM_MatchBoundPredicateObject(benchmark::State& state) {
  auto triples = PublicationGraph(10000);
  GraphStore g;
  g.InsertAll(triples);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
  for (auto _ : state) {
    const auto& t = triples[pick(rng)];
    benchmark::DoNotOptimize(g.Match(std::nullopt, t.predicate, t.object));
  }
}
BENCHMARK(BM_MatchBoundPredicateObject);

void BM_MaterializeChains(benchmark::State& state) {
  GraphStore g;
  g.InsertAll(PublicationGraph(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(litgraph::graphbuild::MaterializePropertyChains(g));
}
BENCHMARK(BM_MaterializeChains)->Arg(1000)->Arg(5000);

}  // namespace
