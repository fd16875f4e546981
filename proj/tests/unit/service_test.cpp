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

#include "litgraph/service.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "fixture.hpp"
#include "litgraph/iri.hpp"

namespace litgraph::service {
namespace {

using nlohmann::json;

const std::string kDerrida = "http://litgraph.local/author/wikidata/Q130631";
const std::string kAchebe = "http://litgraph.local/author/wikidata/Q214582";

std::string EntityPath(const std::string& iri) { return "/api/entity/" + PercentEncode(iri); }

class ApiTest : public ::testing::Test {
 protected:
  ApiTest()
      : handle_(std::make_shared<store::StoreHandle>(testing::GoldenStore())),
        api_(handle_, IriMinter()) {}

  json Get(const std::string& target, int expected_status = 200) {
    auto r = api_.Handle("GET", target);
    EXPECT_EQ(r.status, expected_status) << target << ": " << r.body;
    EXPECT_EQ(r.content_type, "application/json");
    return json::parse(r.body);
  }

  std::shared_ptr<store::StoreHandle> handle_;
  Api api_;
};

TEST_F(ApiTest, SearchShape) {
  auto hits = Get("/api/search?q=chinua%20achebe&limit=5");
  ASSERT_TRUE(hits.is_array());
  ASSERT_FALSE(hits.empty());
  for (const auto& h : hits) {
    for (const char* key : {"iri", "label", "type", "types", "match", "summary"}) EXPECT_TRUE(h.contains(key)) << key;
  }
  EXPECT_EQ(hits[0]["iri"], kAchebe);
  EXPECT_EQ(hits[0]["match"], "exact");
  auto works = Get("/api/search?q=things%20fall&type=frbr:Expression");
  ASSERT_EQ(works.size(), 1u);
  EXPECT_EQ(works[0]["type"], "frbr:Expression");
  EXPECT_EQ(Get("/api/search?q=zzzzzz").size(), 0u);
}

TEST_F(ApiTest, SearchErrors) {
  Get("/api/search", 400);
  Get("/api/search?q=%20", 400);
  Get("/api/search?q=a&limit=0", 400);
  Get("/api/search?q=a&limit=101", 400);
  Get("/api/search?q=a&limit=ten", 400);
  Get("/api/search?q=a&type=Spaceship", 400);
}

TEST_F(ApiTest, DerridaEntity) {
  auto e = Get(EntityPath(kDerrida));
  for (const char* key : {"iri", "labels", "types", "attributes", "edge_groups", "provenance", "person"}) {
    EXPECT_TRUE(e.contains(key)) << key;
  }
  EXPECT_EQ(e["iri"], kDerrida);
  const auto& p = e["person"];
  EXPECT_EQ(p["birth_country"]["code"], "DZ");
  auto roles = p["roles"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(roles.begin(), roles.end(), "Transnational"), roles.end());
  ASSERT_EQ(p["citizenships"].size(), 1u);
  EXPECT_EQ(p["citizenships"][0]["code"], "FR");
  EXPECT_EQ(p["citizenships"][0]["label"], "France");
}

TEST_F(ApiTest, ExpressionEntityHasEditions) {
  auto e = Get(EntityPath("http://litgraph.local/work/goodreads/900202"));
  ASSERT_TRUE(e.contains("expression"));
  const auto& editions = e["expression"]["editions"];
  ASSERT_EQ(editions.size(), 2u);
  bool translator = false;
  for (const auto& ed : editions) {
    for (const auto& pub : ed["publications"]) {
      for (const auto& agent : pub["agents"]) {
        for (const auto& role : agent["roles"]) translator |= role == "translator";
      }
    }
  }
  EXPECT_TRUE(translator) << e.dump();
}

TEST_F(ApiTest, EntityErrors) {
  Get(EntityPath("http://litgraph.local/author/wikidata/Q0"), 404);
  Get("/api/entity/not%20an%20iri", 400);
  Get("/api/nothing", 404);
  EXPECT_EQ(api_.Handle("POST", "/api/search?q=a").status, 405);
}

TEST_F(ApiTest, NeighborsShapeAndPaging) {
  auto n = Get(EntityPath(kAchebe) + "/neighbors?limit=2&offset=1");
  for (const char* key : {"entity", "direction", "total", "offset", "limit", "counts", "items"}) {
    EXPECT_TRUE(n.contains(key)) << key;
  }
  EXPECT_EQ(n["items"].size(), 2u);
  EXPECT_EQ(n["offset"], 1);
  auto works = Get(EntityPath(kAchebe) + "/neighbors?direction=out&predicate=%5Eprov:wasAttributedTo");
  EXPECT_EQ(works["total"], 2);
  for (const auto& item : works["items"]) EXPECT_EQ(item["direction"], "in");
  Get(EntityPath(kAchebe) + "/neighbors?limit=0", 400);
  Get(EntityPath(kAchebe) + "/neighbors?limit=1001", 400);
  Get(EntityPath(kAchebe) + "/neighbors?direction=up", 400);
  Get(EntityPath("http://litgraph.local/author/wikidata/Q0") + "/neighbors", 404);
}

TEST_F(ApiTest, Places) {
  auto places = Get(EntityPath(kAchebe) + "/places");
  EXPECT_EQ(places, json::parse(R"([{"country":"IT","label":"Italy","count":2},{"country":"GB","label":"United Kingdom","count":1}])"));
}

TEST_F(ApiTest, StatsMatchesGoldenTotals) {
  auto s = Get("/api/stats");
  EXPECT_EQ(s["authors"], 12);
  EXPECT_EQ(s["transnational_authors"], 7);
  EXPECT_TRUE(s["works"].is_array());
  EXPECT_TRUE(s["reception"].is_array());
}

TEST_F(ApiTest, ResponsesAreByteStable) {
  for (const auto& target : std::vector<std::string>{"/api/search?q=a", EntityPath(kDerrida), EntityPath(kAchebe) + "/neighbors",
                                   EntityPath(kAchebe) + "/places", std::string("/api/stats")}) {
    auto first = api_.Handle("GET", target).body;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(api_.Handle("GET", target).body, first) << target;
  }
}

TEST(ApiNoStore, Unavailable) {
  Api api(std::make_shared<store::StoreHandle>(), IriMinter());
  EXPECT_EQ(api.Handle("GET", "/api/stats").status, 503);
}

TEST(ServerTest, ServesOverHttpWithCors) {
  auto handle = std::make_shared<store::StoreHandle>(testing::GoldenStore());
  ServiceConfig config;
  config.port = 0;
  config.cors_origins = {"http://localhost:5173"};
  Server server(config, handle);
  int port = server.Bind();
  ASSERT_GT(port, 0);
  std::thread runner([&] { server.Run(); });
  httplib::Client client("127.0.0.1", port);
  auto r = client.Get("/api/search?q=derrida", {{"Origin", "http://localhost:5173"}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  Api api(handle, IriMinter());
  EXPECT_EQ(r->body, api.Handle("GET", "/api/search?q=derrida").body);
  auto other = client.Get("/api/stats", {{"Origin", "http://evil.test"}});
  ASSERT_TRUE(other);
  EXPECT_FALSE(other->has_header("Access-Control-Allow-Origin"));
  server.Stop();
  runner.join();
}

}  // namespace
}  // namespace litgraph::service
