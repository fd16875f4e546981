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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "fixture.hpp"
#include "litgraph/align.hpp"
#include "litgraph/classify.hpp"
#include "litgraph/gestalt.hpp"
#include "litgraph/graphbuild.hpp"
#include "litgraph/pipeline.hpp"
#include "litgraph/qa.hpp"
#include "litgraph/serialize.hpp"
#include "litgraph/service.hpp"
#include "litgraph/stats.hpp"
#include "litgraph/unicode.hpp"
#include "oracles.hpp"
#include "transnational_cases.hpp"

using namespace litgraph;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome SimilarityExactness() {
  auto start = Clock::now();
  double s = align::GestaltSimilarity("Esther Salaman", "Esther Polianowsky Salaman");
  double ms = SecondsSince(start) * 1e3;
  bool ok = std::abs(s - 0.7) <= 1e-9 && ms < 1.0;
  return {ok, fmt::format("similarity={:.17g} tolerance=1e-9 time={:.3f}ms limit=1ms", s, ms)};
}

Outcome SimilarityOracle() {
  auto start = Clock::now();
  const auto words = testing::AllWords(U"abc", 8);
  std::atomic<std::size_t> next{0}, mismatches{0}, pairs{0};
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      align::GestaltMatcher matcher;
      std::size_t local_pairs = 0, local_bad = 0;
      for (std::size_t i = next++; i < words.size(); i = next++) {
        for (const auto& b : words) {
          if (matcher.Similarity(words[i], b) != testing::ReferenceSimilarity(words[i], b)) ++local_bad;
          ++local_pairs;
        }
      }
      pairs += local_pairs;
      mismatches += local_bad;
    });
  }
  for (auto& t : pool) t.join();
  std::size_t exhaustive_pairs = pairs;

  std::mt19937_64 rng(20240601);
  align::GestaltMatcher matcher;
  std::size_t random_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    auto a = testing::RandomUnicode(rng, 32), b = testing::RandomUnicode(rng, 32);
    if (matcher.Similarity(a, b) != testing::ReferenceSimilarity(a, b)) ++random_bad;
    if (align::GestaltSimilarity(EncodeUtf8(a), EncodeUtf8(b)) != testing::ReferenceSimilarity(a, b)) ++random_bad;
  }
  double secs = SecondsSince(start);
  bool ok = mismatches == 0 && random_bad == 0 && secs < 60.0;
  return {ok, fmt::format("exhaustive_pairs={} mismatches={} random_pairs=10000 mismatches={} time={:.1f}s limit=60s",
                          exhaustive_pairs, mismatches.load(), random_bad, secs)};
}

Outcome ThresholdSemantics() {
  std::mt19937_64 rng(77);
  const align::Heuristic heuristics[] = {align::Heuristic::kPreexistingLink, align::Heuristic::kExactNameBirthYear,
                                         align::Heuristic::kSitemapNameMatch, align::Heuristic::kIsbnBridge};
  const double pinned[] = {0.0, 0.6999999999, 0.7, 0.7000000001, 1.0};
  std::uniform_int_distribution<int> h(0, 3), pin(0, 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<align::AlignmentCandidate> candidates;
  for (int i = 0; i < 5000; ++i) {
    align::AlignmentCandidate c;
    c.left = {Source::kWikidata, "Q" + std::to_string(i), "l"};
    c.right = {Source::kGoodreads, std::to_string(i), "r"};
    int p = pin(rng);
    c.similarity = p < 5 ? pinned[p] : u(rng);
    c.heuristic = heuristics[h(rng)];
    candidates.push_back(c);
  }
  auto accepted_at = [&](double t) {
    std::set<std::string> ids;
    for (const auto& c : align::ApplyThreshold(candidates, t)) {
      if (c.accepted) ids.insert(c.left.source_id);
    }
    return ids;
  };
  std::set<std::string> expected;
  for (const auto& c : candidates) {
    if (c.similarity >= 0.7 || c.heuristic == align::Heuristic::kExactNameBirthYear) expected.insert(c.left.source_id);
  }
  bool exact = accepted_at(0.7) == expected;
  bool monotone = true;
  auto previous = accepted_at(0.0);
  for (int step = 1; step <= 100; ++step) {
    auto current = accepted_at(step / 100.0);
    monotone &= std::includes(previous.begin(), previous.end(), current.begin(), current.end());
    previous = std::move(current);
  }
  return {exact && monotone, fmt::format("candidates=5000 accepted_equals_rule={} monotone_over_101_steps={}", exact, monotone)};
}

Outcome TransnationalTruthTable() {
  const auto& table = classify::RegionTable::Default();
  std::size_t correct = 0, stable = 0, checks = 0;
  for (const auto& c : testing::TransnationalCases()) {
    AuthorEntity a;
    a.iri = Iri("http://litgraph.local/author/wikidata/" + c.label);
    a.birth_country = c.birth_country;
    a.birth_year = c.birth_year;
    a.ethnic_group = c.ethnic_group;
    a.citizenships = c.citizenships;
    auto roles = classify::ClassifyTransnational(a, table);
    correct += (roles.count(std::string(kTransnationalRole)) == 1) == c.expected;
    for (const auto& variant : testing::CitizenshipVariants()) {
      a.citizenships = variant;
      ++checks;
      stable += classify::ClassifyTransnational(a, table) == roles;
    }
  }
  auto n = testing::TransnationalCases().size();
  return {correct == n && n == 10 && stable == checks,
          fmt::format("cases={}/{} citizenship_permutations_stable={}/{}", correct, n, stable, checks)};
}

Outcome ChainEquivalence() {
  auto start = Clock::now();
  std::mt19937_64 rng(99);
  std::size_t equal = 0, graphs = 0, derived_total = 0;
  while (graphs < 200) {
    auto triples = testing::RandomChainGraph(rng, 50);
    store::GraphStore g;
    g.InsertAll(triples);
    auto derived = graphbuild::MaterializePropertyChains(g);
    std::set<Triple> got(derived.begin(), derived.end());
    derived_total += derived.size();
    equal += got.size() == derived.size() && got == testing::NaiveChains(triples);
    ++graphs;
  }
  double secs = SecondsSince(start);
  return {equal == graphs && secs < 30.0,
          fmt::format("graphs={} equal={} derived_triples={} time={:.2f}s limit=30s", graphs, equal, derived_total, secs)};
}

std::string NTriples(const store::GraphStore& g) {
  std::ostringstream out;
  rdf::WriteNTriples(out, g.Triples());
  return out.str();
}

Outcome EndToEndGolden() {
  auto config = testing::FixtureConfig();
  auto golden = testing::ReadText(testing::GoldenGraph());
  auto first = pipeline::RunAll(config, true);
  auto second = pipeline::RunAll(config, true);
  bool identical = NTriples(*first.graph.store) == golden && NTriples(*second.graph.store) == golden;
  const auto& r = first.graph.report;
  auto report = stats::ComputeStats(*first.graph.store, IriMinter(config.namespace_base));
  std::size_t per_source = 0, total = 0;
  for (const auto& row : report.works) (row.source == "total" ? total : per_source) += row.works;
  bool ok = identical && r.authors == 12 && r.expressions_seen == 30 && r.expressions_dropped == 10 && total == per_source;
  return {ok, fmt::format("byte_identical_x2={} authors={} works={} dropped={} total_row={} sum_of_sources={}", identical,
                          r.authors, r.expressions_seen, r.expressions_dropped, total, per_source)};
}

Outcome QaWorkflow() {
  std::vector<align::AlignmentCandidate> candidates;
  for (int b = 0; b < align::kBucketCount; ++b) {
    for (int i = 0; i < 140; ++i) {
      align::AlignmentCandidate c;
      c.left = {Source::kWikidata, fmt::format("Q{}", b * 1000 + i), fmt::format("Author {}", i)};
      c.right = {Source::kGoodreads, fmt::format("{}", b * 1000 + i), fmt::format("Platform {}", i)};
      c.similarity = b / 10.0 + 0.0005 * i;
      c.heuristic = align::Heuristic::kSitemapNameMatch;
      candidates.push_back(c);
    }
  }
  auto render = [](const std::vector<align::QaSample>& s) {
    std::ostringstream out;
    align::WriteWorksheet(out, s);
    return out.str();
  };
  auto samples = align::SampleForQa(candidates, 42, 100);
  bool reproducible = render(samples) == render(align::SampleForQa(candidates, 42, 100));
  for (auto& s : samples) {
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
      s.pairs[i].annotation = (s.bucket == 6 && i >= 89) ? align::Annotation::kIncorrect : align::Annotation::kCorrect;
    }
  }
  std::istringstream sheet(render(samples));
  auto report = align::ScoreQa(align::ReadWorksheet(sheet));
  const auto& top = report.at(6);
  bool ok = reproducible && top.total == 100 && top.accuracy && std::abs(*top.accuracy - 0.89) < 1e-12;
  return {ok, fmt::format("seed=42 reproducible={} bucket={} correct={}/{} accuracy={}", reproducible,
                          align::BucketLabel(6), top.correct, top.total, top.accuracy ? fmt::format("{:.2f}", *top.accuracy) : "n/a")};
}

Outcome StoreOracle() {
  std::mt19937_64 rng(5150);
  auto triples = testing::RandomTriples(rng, 1000);
  store::GraphStore g;
  g.InsertAll(triples);
  std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
  std::size_t queries = 0, equal = 0;
  for (int probe = 0; probe < 50; ++probe) {
    const auto& t = triples[pick(rng)];
    for (int mask = 0; mask < 8; ++mask) {
      std::optional<Term> s, p, o;
      if (mask & 1) s = t.subject;
      if (mask & 2) p = t.predicate;
      if (mask & 4) o = t.object;
      auto expected = testing::FullScan(triples, s, p, o);
      auto got = g.Match(s, p, o);
      ++queries;
      equal += std::set<Triple>(got.begin(), got.end()) == std::set<Triple>(expected.begin(), expected.end()) &&
               got.size() == expected.size();
    }
  }
  std::set<Triple> all(triples.begin(), triples.end());
  std::ostringstream nt, ttl;
  rdf::WriteNTriples(nt, triples);
  rdf::WriteTurtle(ttl, triples, "http://ex.org/");
  auto nt_back = rdf::ParseNTriples(nt.str());
  auto ttl_back = rdf::ParseTurtle(ttl.str());
  bool nt_ok = std::set<Triple>(nt_back.begin(), nt_back.end()) == all;
  bool ttl_ok = std::set<Triple>(ttl_back.begin(), ttl_back.end()) == all;
  return {equal == queries && nt_ok && ttl_ok,
          fmt::format("triples=1000 patterns=8 queries={} equal={} ntriples_roundtrip={} turtle_roundtrip={}", queries,
                      equal, nt_ok, ttl_ok)};
}

bool HasKeys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) return false;
  for (const char* k : keys) {
    if (!j.contains(k)) return false;
  }
  return true;
}

Outcome ServiceConformance() {
  auto handle = std::make_shared<store::StoreHandle>(testing::GoldenStore());
  service::Api api(handle, IriMinter());
  const std::string derrida = PercentEncode("http://litgraph.local/author/wikidata/Q130631");
  const std::string achebe = PercentEncode("http://litgraph.local/author/wikidata/Q214582");
  struct Endpoint {
    std::string target;
    std::function<bool(const json&)> shape;
  };
  const std::vector<Endpoint> endpoints = {
      {"/api/search?q=achebe",
       [](const json& j) {
         return j.is_array() && !j.empty() &&
                std::all_of(j.begin(), j.end(), [](const json& h) {
                  return HasKeys(h, {"iri", "label", "type", "types", "match", "summary"});
                });
       }},
      {"/api/entity/" + derrida,
       [](const json& j) {
         return HasKeys(j, {"iri", "labels", "types", "attributes", "edge_groups", "provenance", "person"});
       }},
      {"/api/entity/" + achebe + "/neighbors?direction=both&limit=5",
       [](const json& j) {
         return HasKeys(j, {"entity", "direction", "total", "offset", "limit", "counts", "items"}) &&
                j["items"].size() == 5;
       }},
      {"/api/entity/" + achebe + "/places",
       [](const json& j) { return j.is_array() && !j.empty() && HasKeys(j[0], {"country", "label", "count"}); }},
      {"/api/stats", [](const json& j) { return HasKeys(j, {"authors", "identifiers", "works", "reception"}); }},
  };
  std::size_t shaped = 0, stable = 0;
  for (const auto& e : endpoints) {
    auto first = api.Handle("GET", e.target);
    bool same = true;
    for (int i = 0; i < 5; ++i) same &= api.Handle("GET", e.target).body == first.body;
    stable += same;
    shaped += first.status == 200 && e.shape(json::parse(first.body));
  }
  auto person = json::parse(api.Handle("GET", "/api/entity/" + derrida).body)["person"];
  auto roles = person["roles"];
  bool transnational = std::find(roles.begin(), roles.end(), "Transnational") != roles.end();
  bool france = false;
  for (const auto& c : person["citizenships"]) france |= c["code"] == "FR" && c["label"] == "France";
  bool errors = api.Handle("GET", "/api/entity/" + achebe + "/neighbors?limit=0").status == 400 &&
                api.Handle("GET", "/api/entity/" + PercentEncode("http://litgraph.local/author/wikidata/Q0")).status == 404;
  bool ok = shaped == endpoints.size() && stable == endpoints.size() && transnational && france && errors;
  return {ok, fmt::format("endpoints_shaped={}/5 byte_stable={}/5 derrida_transnational={} derrida_citizenship_france={} "
                          "error_statuses={}",
                          shaped, stable, transnational, france, errors)};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"similarity_exactness", SimilarityExactness},
      {"similarity_oracle", SimilarityOracle},
      {"threshold_semantics", ThresholdSemantics},
      {"transnational_truth_table", TransnationalTruthTable},
      {"chain_equivalence", ChainEquivalence},
      {"end_to_end_golden", EndToEndGolden},
      {"qa_workflow", QaWorkflow},
      {"store_oracle", StoreOracle},
      {"service_conformance", ServiceConformance},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << " " << outcome.detail << std::endl;
  }
  return failures;
}
