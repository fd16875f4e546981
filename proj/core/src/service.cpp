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

#include <charconv>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <httplib.h>
#include <json.hpp>

#include "litgraph/error.hpp"
#include "litgraph/stats.hpp"
#include "litgraph/unicode.hpp"
#include "litgraph/vocabulary.hpp"

namespace litgraph::service {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultSearchLimit = 20;
constexpr std::size_t kMaxSearchLimit = 100;
constexpr std::size_t kDefaultPageLimit = 50;
constexpr std::size_t kMaxPageLimit = 1000;

ApiResponse JsonResponse(int status, const Json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse ErrorResponse(int status, std::string_view message) {
  return JsonResponse(status, Json{{"error", message}, {"status", status}});
}

std::string DecodeQueryComponent(std::string_view raw) {
  std::string plus;
  plus.reserve(raw.size());
  for (char c : raw) plus.push_back(c == '+' ? ' ' : c);
  return PercentDecode(plus);
}

std::multimap<std::string, std::string> ParseQuery(std::string_view query) {
  std::multimap<std::string, std::string> out;
  while (!query.empty()) {
    auto amp = query.find('&');
    auto pair = query.substr(0, amp);
    query = amp == std::string_view::npos ? std::string_view() : query.substr(amp + 1);
    if (pair.empty()) continue;
    auto eq = pair.find('=');
    out.emplace(DecodeQueryComponent(pair.substr(0, eq)),
                eq == std::string_view::npos ? std::string() : DecodeQueryComponent(pair.substr(eq + 1)));
  }
  return out;
}

std::optional<std::string> First(const std::multimap<std::string, std::string>& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

// Parses a positive (or, with allow_zero, non-negative) count; nullopt when
// malformed or out of range.
std::optional<std::size_t> ParseCount(const std::string& text, std::size_t max, bool allow_zero) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if ((!allow_zero && v == 0) || v > max) return std::nullopt;
  return v;
}

// Short vocabulary name ("Person", "frbr:Expression"), bare local name
// ("Expression") or full IRI.
std::optional<Term> ResolveVocabularyTerm(std::string_view name) {
  const auto& vocab = Vocabulary::Default();
  if (const auto* t = vocab.Find(name)) return Term::FromIri(t->iri);
  if (const auto* t = vocab.FindByIri(name)) return Term::FromIri(t->iri);
  for (const auto& t : vocab.terms()) {
    auto colon = t.name.find(':');
    if (colon != std::string::npos && std::string_view(t.name).substr(colon + 1) == name) {
      return Term::FromIri(t.iri);
    }
  }
  if (Iri::IsValid(name)) return Term::FromIri(std::string(name));
  return std::nullopt;
}

std::string Compact(const Term& t) { return Vocabulary::Default().Compact(t.value()); }

std::string NodeId(const Term& t) { return t.is_blank() ? "_:" + t.value() : t.value(); }

Json LiteralValue(const Term& t) {
  switch (t.literal_type()) {
    case LiteralType::kInteger: return t.AsInteger();
    case LiteralType::kDecimal: return t.AsDouble();
    default: return t.value();
  }
}

std::optional<std::string> FirstLabel(const store::GraphStore& g, const Term& node) {
  auto labels = g.Match(node, V("label"), std::nullopt);
  if (labels.empty()) return std::nullopt;
  return labels.front().object.value();
}

std::vector<std::string> Types(const store::GraphStore& g, const Term& node) {
  std::vector<std::string> out;
  for (const auto& t : g.Match(node, V("type"), std::nullopt)) out.push_back(Compact(t.object));
  return out;
}

std::optional<Term> FirstObject(const store::GraphStore& g, const Term& s, std::string_view p) {
  auto m = g.Match(s, V(p), std::nullopt);
  if (m.empty()) return std::nullopt;
  return m.front().object;
}

Json OptionalLiteral(const store::GraphStore& g, const Term& s, std::string_view p) {
  auto o = FirstObject(g, s, p);
  return o && o->is_literal() ? LiteralValue(*o) : Json(nullptr);
}

// Country nodes render as {code, label}.
Json CountryJson(const store::GraphStore& g, const Term& country) {
  std::string code = country.value().substr(country.value().rfind('/') + 1);
  return Json{{"code", PercentDecode(code)}, {"iri", country.value()},
              {"label", FirstLabel(g, country).value_or(code)}};
}

Json NodeSummary(const store::GraphStore& g, const Term& node) {
  auto label = FirstLabel(g, node);
  return Json{{"iri", NodeId(node)},
              {"label", label ? Json(*label) : Json(nullptr)},
              {"types", Types(g, node)}};
}

std::string Summary(const store::GraphStore& g, const Term& entity) {
  if (g.Contains(Triple{entity, V("type"), V("Person")})) {
    std::string out;
    if (auto y = FirstObject(g, entity, "urw:birthYear")) out = "born " + y->value();
    if (auto c = FirstObject(g, entity, "urw:birthCountry")) {
      out += (out.empty() ? "born in " : " in ") + FirstLabel(g, *c).value_or(c->value());
    }
    if (auto d = FirstObject(g, entity, "urw:deathYear")) out += ", died " + d->value();
    return out;
  }
  if (g.Contains(Triple{entity, V("type"), V("frbr:Expression")})) {
    std::string out;
    if (auto a = FirstObject(g, entity, "prov:wasAttributedTo")) {
      out = "by " + FirstLabel(g, *a).value_or(a->value());
    }
    if (auto r = FirstObject(g, entity, "urb:rated")) out += (out.empty() ? "rated " : ", rated ") + r->value();
    return out;
  }
  auto types = Types(g, entity);
  return types.empty() ? std::string() : types.front();
}

Json PersonSection(const store::GraphStore& g, const Term& e) {
  Json citizenships = Json::array();
  for (const auto& t : g.Match(e, V("urw:citizenship"), std::nullopt)) {
    citizenships.push_back(CountryJson(g, t.object));
  }
  Json roles = Json::array();
  for (const auto& t : g.Match(e, V("dul:hasRole"), std::nullopt)) {
    roles.push_back(FirstLabel(g, t.object).value_or(t.object.value()));
  }
  Json ids = Json::object();
  for (auto [property, key] : {std::pair{"urw:wikidataId", "wikidata"}, {"urw:openLibraryId", "openlibrary"},
                               {"urw:goodreadsId", "goodreads"}, {"urw:viafId", "viaf"}}) {
    if (auto o = FirstObject(g, e, property)) ids[key] = o->value();
  }
  auto birth_country = FirstObject(g, e, "urw:birthCountry");
  auto wikipedia = FirstObject(g, e, "urw:wikipediaPage");
  return Json{{"name", FirstLabel(g, e).value_or("")},
              {"birth_year", OptionalLiteral(g, e, "urw:birthYear")},
              {"death_year", OptionalLiteral(g, e, "urw:deathYear")},
              {"birth_country", birth_country ? CountryJson(g, *birth_country) : Json(nullptr)},
              {"citizenships", citizenships},
              {"roles", roles},
              {"ethnic_group", OptionalLiteral(g, e, "urw:ethnicGroup")},
              {"gender", OptionalLiteral(g, e, "urw:gender")},
              {"external_ids", ids},
              {"wikipedia", wikipedia ? Json(wikipedia->value()) : Json(nullptr)}};
}

Json ExpressionSection(const store::GraphStore& g, const Term& e) {
  auto author = FirstObject(g, e, "prov:wasAttributedTo");
  Json subjects = Json::array();
  for (const auto& t : g.Match(e, V("urb:subject"), std::nullopt)) {
    subjects.push_back(Json{{"iri", t.object.value()}, {"label", FirstLabel(g, t.object).value_or("")}});
  }
  Json editions = Json::array();
  for (const auto& emb : g.Match(e, V("frbr:embodiment"), std::nullopt)) {
    const Term& ed = emb.object;
    Json isbns = Json::array();
    for (const auto& t : g.Match(ed, V("urb:isbn13"), std::nullopt)) isbns.push_back(t.object.value());
    Json publications = Json::array();
    for (const auto& part : g.Match(ed, V("dul:isParticipantIn"), std::nullopt)) {
      const Term& p = part.object;
      Json agents = Json::array();
      for (const auto& a : g.Match(p, V("prov:wasAssociatedWith"), std::nullopt)) {
        Json roles = Json::array();
        for (const auto& r : g.Match(a.object, V("dul:hasRole"), std::nullopt)) {
          roles.push_back(FirstLabel(g, r.object).value_or(r.object.value()));
        }
        agents.push_back(Json{{"name", FirstLabel(g, a.object).value_or("")}, {"roles", roles}});
      }
      auto country = FirstObject(g, p, "urb:country");
      publications.push_back(Json{{"id", NodeId(p)},
                                  {"year", OptionalLiteral(g, p, "urb:year")},
                                  {"country", country ? CountryJson(g, *country) : Json(nullptr)},
                                  {"language", OptionalLiteral(g, p, "urb:language")},
                                  {"publisher", OptionalLiteral(g, p, "urb:publishedBy")},
                                  {"agents", agents}});
    }
    editions.push_back(Json{{"iri", ed.value()},
                            {"label", FirstLabel(g, ed).value_or("")},
                            {"isbn13", isbns},
                            {"publications", publications}});
  }
  return Json{{"title", FirstLabel(g, e).value_or("")},
              {"author", author ? NodeSummary(g, *author) : Json(nullptr)},
              {"language", OptionalLiteral(g, e, "urb:language")},
              {"rating", OptionalLiteral(g, e, "urb:rated")},
              {"ratings_count", OptionalLiteral(g, e, "urb:numberOfRatings")},
              {"readers_count", OptionalLiteral(g, e, "urb:numberOfReaders")},
              {"subjects", subjects},
              {"editions", editions}};
}

Json GroupsJson(const std::vector<store::EdgeGroup>& groups) {
  Json out = Json::array();
  for (const auto& grp : groups) {
    out.push_back(Json{{"predicate", Compact(grp.predicate)},
                       {"predicate_iri", grp.predicate.value()},
                       {"direction", store::DirectionName(grp.direction)},
                       {"count", grp.count}});
  }
  return out;
}

}  // namespace

Api::Api(std::shared_ptr<store::StoreHandle> store, IriMinter minter)
    : store_(std::move(store)), minter_(std::move(minter)) {}

ApiResponse Api::Handle(std::string_view method, std::string_view target) const {
  if (method != "GET" && method != "HEAD") return ErrorResponse(405, "method not allowed");
  auto qmark = target.find('?');
  std::string_view path = target.substr(0, qmark);
  std::string_view query = qmark == std::string_view::npos ? std::string_view() : target.substr(qmark + 1);

  auto graph = store_ ? store_->Get() : nullptr;
  if (!graph) return ErrorResponse(503, "no store published");

  try {
    if (path == "/api/search") return Search(*graph, query);
    if (path == "/api/stats") return Stats(*graph);
    constexpr std::string_view kEntity = "/api/entity/";
    if (path.starts_with(kEntity)) {
      std::string_view rest = path.substr(kEntity.size());
      auto slash = rest.find('/');
      std::string iri = PercentDecode(rest.substr(0, slash));
      if (iri.empty()) return ErrorResponse(400, "missing entity IRI");
      if (!Iri::IsValid(iri)) return ErrorResponse(400, fmt::format("invalid IRI '{}'", iri));
      if (slash == std::string_view::npos) return Entity(*graph, iri);
      std::string_view sub = rest.substr(slash + 1);
      if (sub == "neighbors") return EntityNeighbors(*graph, iri, query);
      if (sub == "places") return Places(*graph, iri);
    }
    return ErrorResponse(404, "no such endpoint");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotFound) return ErrorResponse(404, e.what());
    if (e.code() == ErrorCode::kInvalidArgument) return ErrorResponse(400, e.what());
    spdlog::error("request {} failed: {}", target, e.what());
    return ErrorResponse(500, e.what());
  }
}

ApiResponse Api::Search(const store::GraphStore& graph, std::string_view query) const {
  auto params = ParseQuery(query);
  auto q = First(params, "q");
  if (!q || NormalizeName(*q).empty()) return ErrorResponse(400, "missing query parameter q");
  std::optional<Term> type;
  if (auto t = First(params, "type"); t && !t->empty()) {
    type = ResolveVocabularyTerm(*t);
    if (!type) return ErrorResponse(400, fmt::format("unknown type '{}'", *t));
  }
  std::size_t limit = kDefaultSearchLimit;
  if (auto l = First(params, "limit")) {
    auto parsed = ParseCount(*l, kMaxSearchLimit, false);
    if (!parsed) return ErrorResponse(400, fmt::format("limit must be 1..{}", kMaxSearchLimit));
    limit = *parsed;
  }
  Json out = Json::array();
  for (const auto& hit : store::SearchLabels(graph, *q, type, limit)) {
    auto types = Types(graph, hit.entity);
    out.push_back(Json{{"iri", NodeId(hit.entity)},
                       {"label", hit.label},
                       {"type", types.empty() ? Json(nullptr) : Json(types.front())},
                       {"types", types},
                       {"match", hit.rank == 0 ? "exact" : hit.rank == 1 ? "prefix" : "substring"},
                       {"summary", Summary(graph, hit.entity)}});
  }
  return JsonResponse(200, out);
}

ApiResponse Api::Entity(const store::GraphStore& graph, const std::string& iri) const {
  const Term e = Term::FromIri(iri);
  if (!graph.HasNode(e)) return ErrorResponse(404, fmt::format("unknown entity {}", iri));

  Json labels = Json::array();
  Json attributes = Json::object();
  Json provenance = Json::array();
  for (const auto& t : graph.Match(e, std::nullopt, std::nullopt)) {
    if (t.predicate == V("label")) {
      labels.push_back(t.object.value());
    } else if (t.predicate == V("prov:wasDerivedFrom")) {
      provenance.push_back(t.object.value());
    } else if (t.object.is_literal()) {
      attributes[Compact(t.predicate)].push_back(LiteralValue(t.object));
    }
  }
  const auto hood = store::Neighbors(graph, e, store::Direction::kBoth, {}, 0, 0);
  Json view{{"iri", iri},
            {"labels", labels},
            {"types", Types(graph, e)},
            {"attributes", attributes},
            {"edge_groups", GroupsJson(hood.groups)},
            {"provenance", provenance}};
  if (graph.Contains(Triple{e, V("type"), V("Person")})) view["person"] = PersonSection(graph, e);
  if (graph.Contains(Triple{e, V("type"), V("frbr:Expression")})) {
    view["expression"] = ExpressionSection(graph, e);
  }
  return JsonResponse(200, view);
}

ApiResponse Api::EntityNeighbors(const store::GraphStore& graph, const std::string& iri,
                                 std::string_view query) const {
  auto params = ParseQuery(query);
  store::Direction direction = store::Direction::kBoth;
  if (auto d = First(params, "direction")) {
    auto parsed = store::ParseDirection(*d);
    if (!parsed) return ErrorResponse(400, fmt::format("bad direction '{}'", *d));
    direction = *parsed;
  }
  std::size_t limit = kDefaultPageLimit, offset = 0;
  if (auto l = First(params, "limit")) {
    auto parsed = ParseCount(*l, kMaxPageLimit, false);
    if (!parsed) return ErrorResponse(400, fmt::format("limit must be 1..{}", kMaxPageLimit));
    limit = *parsed;
  }
  if (auto o = First(params, "offset")) {
    auto parsed = ParseCount(*o, std::numeric_limits<std::size_t>::max(), true);
    if (!parsed) return ErrorResponse(400, "offset must be a non-negative integer");
    offset = *parsed;
  }
  std::vector<store::PredicateFilter> filter;
  auto [begin, end] = params.equal_range("predicate");
  for (auto it = begin; it != end; ++it) {
    std::string_view list = it->second;
    while (!list.empty()) {
      auto comma = list.find(',');
      std::string_view item = list.substr(0, comma);
      list = comma == std::string_view::npos ? std::string_view() : list.substr(comma + 1);
      if (item.empty()) continue;
      std::optional<store::Direction> dir;
      if (item.front() == '^') {
        dir = store::Direction::kIn;
        item.remove_prefix(1);
      }
      auto predicate = ResolveVocabularyTerm(item);
      if (!predicate) return ErrorResponse(400, fmt::format("unknown predicate '{}'", item));
      filter.push_back({*predicate, dir});
    }
  }

  const Term e = Term::FromIri(iri);
  auto hood = store::Neighbors(graph, e, direction, filter, limit, offset);
  Json items = Json::array();
  for (const auto& edge : hood.items) {
    items.push_back(Json{{"predicate", Compact(edge.predicate)},
                         {"predicate_iri", edge.predicate.value()},
                         {"direction", store::DirectionName(edge.direction)},
                         {"neighbor", NodeSummary(graph, edge.neighbor)}});
  }
  return JsonResponse(200, Json{{"entity", iri},
                                {"direction", store::DirectionName(direction)},
                                {"total", hood.total},
                                {"offset", offset},
                                {"limit", limit},
                                {"counts", GroupsJson(hood.groups)},
                                {"items", items}});
}

ApiResponse Api::Places(const store::GraphStore& graph, const std::string& iri) const {
  Json out = Json::array();
  for (const auto& place : store::PublicationPlaces(graph, Term::FromIri(iri))) {
    Term node = Term::FromIri(minter_.MintKeyed(EntityKind::kCountry, place.country));
    out.push_back(Json{{"country", place.country},
                       {"label", FirstLabel(graph, node).value_or(place.country)},
                       {"count", place.count}});
  }
  return JsonResponse(200, out);
}

ApiResponse Api::Stats(const store::GraphStore& graph) const {
  return {200, stats::StatsToJson(stats::ComputeStats(graph, minter_)), "application/json"};
}

Server::Server(ServiceConfig config, std::shared_ptr<store::StoreHandle> store)
    : config_(std::move(config)),
      store_(std::move(store)),
      api_(std::make_unique<Api>(store_, IriMinter(config_.namespace_base.empty()
                                                       ? std::string(IriMinter::kDefaultBase)
                                                       : config_.namespace_base))),
      server_(std::make_unique<httplib::Server>()) {
  auto cors = [this](const httplib::Request& req, httplib::Response& res) {
    if (config_.cors_origins.empty()) return;
    auto origin = req.get_header_value("Origin");
    bool any = std::find(config_.cors_origins.begin(), config_.cors_origins.end(), "*") !=
               config_.cors_origins.end();
    if (any) {
      res.set_header("Access-Control-Allow-Origin", "*");
    } else if (!origin.empty() && std::find(config_.cors_origins.begin(), config_.cors_origins.end(),
                                            origin) != config_.cors_origins.end()) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    }
  };
  server_->Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    auto r = api_->Handle("GET", req.target);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server_->set_post_routing_handler(cors);
  if (!config_.static_dir.empty()) {
    if (!server_->set_mount_point("/", config_.static_dir.string())) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("static directory {} does not exist", config_.static_dir.string()));
    }
  }
}

Server::~Server() = default;

int Server::Bind() {
  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.bind_address);
    if (port < 0) throw Error(ErrorCode::kIo, fmt::format("cannot bind {}", config_.bind_address));
  } else if (!server_->bind_to_port(config_.bind_address, port)) {
    throw Error(ErrorCode::kIo, fmt::format("cannot bind {}:{}", config_.bind_address, port));
  }
  spdlog::info("listening on {}:{}", config_.bind_address, port);
  return port;
}

void Server::Run() { server_->listen_after_bind(); }

void Server::Stop() { server_->stop(); }

}  // namespace litgraph::service
