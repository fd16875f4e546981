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

#include "litgraph/config.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

#include "litgraph/error.hpp"

namespace litgraph {
namespace {

void ExpectConfigError(std::string_view json, std::string_view needle) {
  try {
    Config::FromJson(json, "/base").Validate();
    ADD_FAILURE() << json;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig) << json;
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(Config, DefaultsAndRelativePaths) {
  auto c = Config::FromJson(R"({"sources":{"wikidata":"dumps/wd.jsonl","openlibrary":"/abs/ol.jsonl"},
                               "connectors":{"mode":"record","cache_dir":"cache"}})",
                            "/base");
  EXPECT_EQ(c.wikidata_dump, std::filesystem::path("/base/dumps/wd.jsonl"));
  EXPECT_EQ(c.openlibrary_dump, std::filesystem::path("/abs/ol.jsonl"));
  EXPECT_EQ(c.cache_dir, std::filesystem::path("/base/cache"));
  EXPECT_EQ(c.threshold, 0.7);
  EXPECT_EQ(c.qa_seed, 42u);
  EXPECT_EQ(c.namespace_base, "http://litgraph.local/");
  EXPECT_NO_THROW(c.Validate());
}

TEST(Config, Errors) {
  ExpectConfigError("{", "JSON");
  ExpectConfigError(R"({"sourcez":{}})", "sourcez");
  ExpectConfigError(R"({"sources":{"wikidata":"a","dblp":"b"}})", "sources.dblp");
  ExpectConfigError(R"({"align":{"threshold":"high"}})", "align.threshold");
  ExpectConfigError(R"({"align":{"threshold":1.5}})", "threshold");
  ExpectConfigError(R"({"connectors":{"mode":"sometimes"}})", "sometimes");
  ExpectConfigError(R"({"connectors":{"requests_per_second":0}})", "requests_per_second");
  ExpectConfigError(R"({"connectors":{"max_retries":-1}})", "max_retries");
  ExpectConfigError(R"({"service":{"port":70000}})", "port");
  ExpectConfigError(R"({"namespace_base":"not an iri"})", "namespace");
}

TEST(Config, MissingFile) {
  try {
    Config::Load("/nonexistent/litgraph.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(Config, ModePrecedence) {
  auto c = Config::FromJson(R"({"connectors":{"mode":"record","cache_dir":"c"}})", "/b");
  ::unsetenv("LITGRAPH_CONNECTOR_MODE");
  EXPECT_EQ(c.EffectiveMode(false), connectors::Mode::kRecord);
  EXPECT_EQ(c.EffectiveMode(true), connectors::Mode::kReplay);
  ::setenv("LITGRAPH_CONNECTOR_MODE", "live", 1);
  EXPECT_EQ(c.EffectiveMode(false), connectors::Mode::kLive);
  EXPECT_EQ(c.EffectiveMode(true), connectors::Mode::kReplay);
  ::unsetenv("LITGRAPH_CONNECTOR_MODE");
  EXPECT_EQ(Config::FromJson("{}", "/b").EffectiveMode(false), connectors::Mode::kLive);
}

TEST(Config, EnvironmentOverridesService) {
  auto c = Config::FromJson(R"({"service":{"port":8080,"bind":"127.0.0.1"}})", "/b");
  ::setenv("LITGRAPH_PORT", "9191", 1);
  ::setenv("LITGRAPH_CORS_ORIGINS", "http://a.test,http://b.test", 1);
  c.ApplyEnvironment();
  EXPECT_EQ(c.service.port, 9191);
  EXPECT_EQ(c.service.cors_origins, (std::vector<std::string>{"http://a.test", "http://b.test"}));
  ::setenv("LITGRAPH_PORT", "eighty", 1);
  EXPECT_THROW(c.ApplyEnvironment(), Error);
  ::unsetenv("LITGRAPH_PORT");
  ::unsetenv("LITGRAPH_CORS_ORIGINS");
}

}  // namespace
}  // namespace litgraph
