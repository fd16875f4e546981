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

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "litgraph/error.hpp"

namespace litgraph {

namespace {

using Json = nlohmann::json;

[[noreturn]] void Fail(std::string_view message) { throw Error(ErrorCode::kConfig, std::string(message)); }

void CheckKeys(const Json& obj, std::string_view section, const std::set<std::string>& allowed) {
  if (!obj.is_object()) Fail(fmt::format("config section '{}' must be an object", section));
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) Fail(fmt::format("unknown config key '{}{}'", section.empty() ? "" : std::string(section) + ".", key));
  }
}

template <typename T>
std::optional<T> Get(const Json& obj, std::string_view section, const std::string& key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    Fail(fmt::format("config key '{}.{}' has the wrong type", section, key));
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

void SetPath(const Json& obj, std::string_view section, const std::string& key,
             const std::filesystem::path& base, std::filesystem::path& out) {
  if (auto v = Get<std::string>(obj, section, key)) out = Resolve(base, *v);
}

}  // namespace

Config Config::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfig, fmt::format("cannot read config {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return FromJson(ss.str(), base);
}

Config Config::FromJson(std::string_view text, const std::filesystem::path& base_dir) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(fmt::format("config is not valid JSON: {}", e.what()));
  }
  CheckKeys(root, "", {"namespace_base", "sources", "connectors", "classification", "align", "qa",
                       "work_dir", "service"});
  Config c;
  c.base_dir = base_dir;
  c.work_dir = base_dir / c.work_dir;
  if (auto v = Get<std::string>(root, "", "namespace_base")) c.namespace_base = *v;
  SetPath(root, "", "work_dir", base_dir, c.work_dir);

  if (root.contains("sources")) {
    const auto& s = root["sources"];
    CheckKeys(s, "sources", {"wikidata", "openlibrary", "goodreads", "viaf_isbns", "goodreads_sitemap"});
    SetPath(s, "sources", "wikidata", base_dir, c.wikidata_dump);
    SetPath(s, "sources", "openlibrary", base_dir, c.openlibrary_dump);
    SetPath(s, "sources", "goodreads", base_dir, c.goodreads_dump);
    SetPath(s, "sources", "viaf_isbns", base_dir, c.viaf_isbns);
    SetPath(s, "sources", "goodreads_sitemap", base_dir, c.goodreads_sitemap);
  }
  if (root.contains("connectors")) {
    const auto& s = root["connectors"];
    CheckKeys(s, "connectors", {"mode", "cache_dir", "requests_per_second", "max_retries"});
    if (auto m = Get<std::string>(s, "connectors", "mode")) {
      c.connector_mode = connectors::ParseMode(*m);
      if (!c.connector_mode) Fail(fmt::format("unknown connector mode '{}'", *m));
    }
    SetPath(s, "connectors", "cache_dir", base_dir, c.cache_dir);
    if (auto v = Get<double>(s, "connectors", "requests_per_second")) c.requests_per_second = *v;
    if (auto v = Get<int>(s, "connectors", "max_retries")) c.max_retries = *v;
  }
  if (root.contains("classification")) {
    const auto& s = root["classification"];
    CheckKeys(s, "classification", {"regions_csv", "minority_groups"});
    SetPath(s, "classification", "regions_csv", base_dir, c.regions_csv);
    SetPath(s, "classification", "minority_groups", base_dir, c.minority_groups);
  }
  if (root.contains("align")) {
    const auto& s = root["align"];
    CheckKeys(s, "align", {"threshold"});
    if (auto v = Get<double>(s, "align", "threshold")) c.threshold = *v;
  }
  if (root.contains("qa")) {
    const auto& s = root["qa"];
    CheckKeys(s, "qa", {"seed", "per_bucket"});
    if (auto v = Get<std::uint64_t>(s, "qa", "seed")) c.qa_seed = *v;
    if (auto v = Get<std::size_t>(s, "qa", "per_bucket")) c.qa_per_bucket = *v;
  }
  if (root.contains("service")) {
    const auto& s = root["service"];
    CheckKeys(s, "service", {"bind", "port", "cors_origins", "static_dir", "store"});
    if (auto v = Get<std::string>(s, "service", "bind")) c.service.bind_address = *v;
    if (auto v = Get<int>(s, "service", "port")) c.service.port = *v;
    if (auto v = Get<std::vector<std::string>>(s, "service", "cors_origins")) c.service.cors_origins = *v;
    SetPath(s, "service", "static_dir", base_dir, c.service.static_dir);
    SetPath(s, "service", "store", base_dir, c.store_path);
  }
  c.service.namespace_base = c.namespace_base;
  c.Validate();
  return c;
}

void Config::ApplyEnvironment() {
  if (const char* v = std::getenv("LITGRAPH_BIND"); v && *v) service.bind_address = v;
  if (const char* v = std::getenv("LITGRAPH_PORT"); v && *v) {
    char* end = nullptr;
    long port = std::strtol(v, &end, 10);
    if (*end != '\0') Fail(fmt::format("LITGRAPH_PORT '{}' is not a number", v));
    service.port = static_cast<int>(port);
  }
  if (const char* v = std::getenv("LITGRAPH_STORE"); v && *v) store_path = v;
  if (const char* v = std::getenv("LITGRAPH_CORS_ORIGINS"); v) {
    service.cors_origins.clear();
    std::string_view list = v;
    while (!list.empty()) {
      auto comma = list.find(',');
      auto item = list.substr(0, comma);
      if (!item.empty()) service.cors_origins.emplace_back(item);
      list = comma == std::string_view::npos ? std::string_view() : list.substr(comma + 1);
    }
  }
  Validate();
}

connectors::Mode Config::EffectiveMode(bool offline) const {
  if (offline) return connectors::Mode::kReplay;
  if (auto env = connectors::ModeFromEnvironment()) return *env;
  return connector_mode.value_or(connectors::Mode::kLive);
}

void Config::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    Fail(fmt::format("threshold {} is outside [0, 1]", threshold));
  }
  if (!(requests_per_second > 0)) Fail("requests_per_second must be positive");
  if (max_retries < 0) Fail("max_retries must be non-negative");
  if (service.port < 0 || service.port > 65535) Fail(fmt::format("port {} out of range", service.port));
  if (!Iri::IsValid(namespace_base)) Fail(fmt::format("namespace_base '{}' is not an IRI", namespace_base));
}

}  // namespace litgraph
