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

#include "litgraph/pipeline.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "fixture.hpp"
#include "litgraph/error.hpp"
#include "litgraph/serialize.hpp"

namespace litgraph::pipeline {
namespace {

namespace fs = std::filesystem;

std::string NTriples(const store::GraphStore& store) {
  std::ostringstream out;
  rdf::WriteNTriples(out, store.Triples());
  return out.str();
}

TEST(Pipeline, FixtureMatchesGolden) {
  auto result = RunAll(testing::FixtureConfig(), true);
  EXPECT_EQ(NTriples(*result.graph.store), testing::ReadText(testing::GoldenGraph()));
  const auto& r = result.graph.report;
  EXPECT_EQ(r.authors, 12u);
  EXPECT_EQ(r.expressions_seen, 30u);
  EXPECT_EQ(r.expressions_dropped, 10u);
  EXPECT_EQ(r.unlinked_works, 0u);
}

TEST(Pipeline, AlignmentOutcomes) {
  auto result = RunAll(testing::FixtureConfig(), true);
  std::map<std::pair<std::string, Source>, std::string> links;
  for (const auto& c : result.alignment.links.accepted) links[{c.left.source_id, c.right.source}] = c.right.source_id;
  // Similarity exactly at the threshold is accepted.
  EXPECT_EQ((links[{"Q4405658", Source::kGoodreads}]), "618352");
  // Exact name and birth year; the 1931 homonym is not linked.
  EXPECT_EQ((links[{"Q214582", Source::kOpenLibrary}]), "OL900003A");
  EXPECT_EQ((links[{"Q214582", Source::kGoodreads}]), "900005");
  // Two ISBN bridge targets; the exact-name one wins.
  EXPECT_EQ((links[{"Q5878", Source::kOpenLibrary}]), "OL900006A");
  EXPECT_EQ(result.alignment.links.conflicting.size(), 1u);
  // The stale pre-existing link is dropped with a warning.
  EXPECT_EQ(links.count({"Q312962", Source::kGoodreads}), 0u);
  EXPECT_EQ(result.alignment.warnings.size(), 1u);
  EXPECT_EQ(result.alignment.links.accepted.size(), 17u);
}

TEST(Pipeline, StagedStepsMatchInMemoryRun) {
  auto config = testing::FixtureConfig();
  auto dir = fs::temp_directory_path() / "litgraph_pipeline_test";
  fs::remove_all(dir);
  auto staging = RunIngest(config);
  WriteStaging(staging, dir / "staging");
  auto reread = ReadStaging(dir / "staging");
  EXPECT_EQ(reread.wikidata_authors.size(), 12u);
  auto client = MakeClient(config, true);
  auto alignment = RunAlign(config, reread, *client, config.threshold);
  EXPECT_EQ(client->network_requests(), 0u);
  WriteAlignOutput(alignment, dir / "links");
  IriMinter minter(config.namespace_base);
  auto authors = UnifyAuthors(reread, ReadAcceptedLinks(dir / "links"), minter);
  Classify(authors, LoadRegionTable(config));
  std::stringstream roles;
  WriteRoles(roles, authors);
  auto role_map = ReadRoles(roles);
  EXPECT_EQ(role_map.at("Q130631"), std::set<std::string>{"Transnational"});
  EXPECT_TRUE(role_map.at("Q7241").empty());
  auto input = AssembleBuildInput(reread, authors, minter);
  auto built = graphbuild::Build(input, minter, LoadRegionTable(config));
  EXPECT_EQ(NTriples(*built.store), testing::ReadText(testing::GoldenGraph()));
  fs::remove_all(dir);
}

TEST(Pipeline, ReplayMissSurfaces) {
  auto config = testing::FixtureConfig();
  auto dir = fs::temp_directory_path() / "litgraph_empty_cache";
  fs::remove_all(dir);
  config.cache_dir = dir;
  auto staging = RunIngest(config);
  auto client = MakeClient(config, true);
  try {
    RunAlign(config, staging, *client, 0.7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReplayMiss);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace litgraph::pipeline
