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

#include "litgraph/connectors.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <httplib.h>
#include <json.hpp>

#include "litgraph/error.hpp"
#include "litgraph/iri.hpp"
#include "litgraph/isbn.hpp"
#include "litgraph/unicode.hpp"

namespace litgraph::connectors {

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kLive: return "live";
    case Mode::kRecord: return "record";
    case Mode::kReplay: return "replay";
  }
  return "unknown";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "live") return Mode::kLive;
  if (name == "record") return Mode::kRecord;
  if (name == "replay") return Mode::kReplay;
  return std::nullopt;
}

std::optional<Mode> ModeFromEnvironment() {
  const char* value = std::getenv(std::string(kModeEnvVar).c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  auto mode = ParseMode(value);
  if (!mode) {
    throw Error(ErrorCode::kConfig, fmt::format("{}='{}' is not one of live, record, replay",
                                                kModeEnvVar, value));
  }
  return mode;
}

// --- transport ------------------------------------------------------------------

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // path?query
};

SplitUrl Split(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("not an absolute URL: {}", url));
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse Get(const std::string& url) override {
    auto parts = Split(url);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    auto result = client.Get(parts.target, {{"User-Agent", "litgraph/0.3"},
                                            {"Accept", "application/json, application/xml, */*"}});
    if (!result) {
      throw Error(ErrorCode::kNetwork,
                  fmt::format("GET {} failed: {}", url, httplib::to_string(result.error())));
    }
    return HttpResponse{result->status, result->body};
  }

 private:
  std::chrono::seconds timeout_;
};

std::string UrlEncode(std::string_view raw) { return PercentEncode(raw); }

}  // namespace

std::shared_ptr<HttpTransport> MakeHttpTransport(std::chrono::seconds timeout) {
  return std::make_shared<HttplibTransport>(timeout);
}

std::string HostOf(std::string_view url) {
  auto scheme_end = url.find("://");
  auto start = scheme_end == std::string_view::npos ? 0 : scheme_end + 3;
  auto end = url.find_first_of("/?#", start);
  return std::string(url.substr(start, end == std::string_view::npos ? url.npos : end - start));
}

// --- rate limiting and retries ----------------------------------------------------

RateLimiter::RateLimiter(double requests_per_second, Sleeper sleeper, Clock clock)
    : sleeper_(std::move(sleeper)), clock_(std::move(clock)) {
  if (!(requests_per_second > 0.0)) {
    throw Error(ErrorCode::kConfig, "requests_per_second must be positive");
  }
  interval_ = std::chrono::nanoseconds(static_cast<long long>(1e9 / requests_per_second));
}

void RateLimiter::Acquire(const std::string& host) {
  std::chrono::nanoseconds wait{0};
  {
    std::lock_guard lock(mutex_);
    auto now = clock_();
    auto& slot = next_slot_[host];
    auto start = std::max(now, slot);
    wait = std::chrono::duration_cast<std::chrono::nanoseconds>(start - now);
    slot = start + interval_;
  }
  if (wait.count() > 0) sleeper_(std::chrono::ceil<std::chrono::milliseconds>(wait));
}

Client::Client(ClientOptions options, std::shared_ptr<ResponseCache> cache,
               std::shared_ptr<HttpTransport> transport, Sleeper sleeper, Clock clock)
    : options_(options),
      cache_(std::move(cache)),
      transport_(std::move(transport)),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      limiter_(options.requests_per_second, sleeper_, clock_) {
  if (options_.max_retries < 0) throw Error(ErrorCode::kConfig, "max_retries must be >= 0");
  if (options_.mode != Mode::kLive && !cache_) {
    throw Error(ErrorCode::kConfig, fmt::format("{} mode requires a cache directory", ModeName(options_.mode)));
  }
}

HttpResponse Client::Fetch(const Request& request) {
  if (options_.mode != Mode::kLive) {
    if (auto hit = cache_->Get(RequestKey(request.endpoint, request.query))) {
      return HttpResponse{hit->status, std::move(hit->body)};
    }
    if (options_.mode == Mode::kReplay) {
      throw Error(ErrorCode::kReplayMiss,
                  fmt::format("replay cache miss: {} [{}]", request.endpoint, NormalizeQuery(request.query)));
    }
  }
  auto response = FetchWithRetry(request);
  if (options_.mode == Mode::kRecord) {
    cache_->Put(request.endpoint, request.query, response.status, response.body,
                static_cast<std::int64_t>(std::time(nullptr)));
  }
  return response;
}

HttpResponse Client::FetchWithRetry(const Request& request) {
  if (!transport_) throw Error(ErrorCode::kConfig, "no HTTP transport configured");
  auto host = HostOf(request.url);
  auto backoff = options_.initial_backoff;
  std::string last_failure;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      spdlog::warn("retrying {} in {} ms ({})", request.url, backoff.count(), last_failure);
      sleeper_(backoff);
      backoff *= 2;
    }
    limiter_.Acquire(host);
    ++network_requests_;
    try {
      auto response = transport_->Get(request.url);
      if (response.status == 429 || response.status >= 500) {
        last_failure = fmt::format("HTTP {}", response.status);
        continue;
      }
      return response;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNetwork) throw;
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::kNetwork, fmt::format("GET {} failed after {} attempts: {}", request.url,
                                               options_.max_retries + 1, last_failure));
}

// --- SPARQL ---------------------------------------------------------------------

std::string PagedQuery(std::string_view query, std::size_t limit, std::size_t offset) {
  return fmt::format("{}\nLIMIT {}\nOFFSET {}", query, limit, offset);
}

namespace {

bool HasLimitClause(std::string_view query) {
  static const std::regex kLimit(R"(\bLIMIT\s+\d+)", std::regex::icase);
  return std::regex_search(query.begin(), query.end(), kLimit);
}

SparqlResult ParseSparqlJson(std::string_view body) {
  SparqlResult out;
  try {
    auto doc = nlohmann::json::parse(body);
    for (const auto& v : doc.at("head").at("vars")) out.variables.push_back(v.get<std::string>());
    for (const auto& binding : doc.at("results").at("bindings")) {
      std::map<std::string, std::string> row;
      for (const auto& [var, value] : binding.items()) row[var] = value.at("value").get<std::string>();
      out.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("SPARQL results: {}", e.what()));
  }
  return out;
}

void CheckStatus(const HttpResponse& response, std::string_view what) {
  if (response.status != 200) {
    throw Error(ErrorCode::kNetwork, fmt::format("{}: HTTP {}", what, response.status));
  }
}

}  // namespace

SparqlResult SparqlSelect(Client& client, std::string_view endpoint, std::string_view query,
                          std::size_t page_size) {
  if (page_size == 0) throw Error(ErrorCode::kInvalidArgument, "page_size must be positive");
  auto fetch = [&](const std::string& text) {
    Request request{std::string(endpoint), text,
                    fmt::format("{}?format=json&query={}", endpoint, UrlEncode(text))};
    auto response = client.Fetch(request);
    CheckStatus(response, "SPARQL query");
    return ParseSparqlJson(response.body);
  };
  if (HasLimitClause(query)) return fetch(std::string(query));

  SparqlResult all;
  for (std::size_t offset = 0;; offset += page_size) {
    auto page = fetch(PagedQuery(query, page_size, offset));
    if (all.variables.empty()) all.variables = page.variables;
    auto count = page.rows.size();
    for (auto& row : page.rows) all.rows.push_back(std::move(row));
    if (count < page_size) break;
  }
  return all;
}

// --- Open Library -------------------------------------------------------------------

namespace {

std::optional<int> FirstYear(std::string_view text) {
  static const std::regex kYear(R"((^|[^0-9])([0-9]{4})([^0-9]|$))");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(text.begin(), text.end(), m, kYear)) return std::stoi(m[2].str());
  return std::nullopt;
}

std::string StripAuthorsPrefix(std::string key) {
  constexpr std::string_view kPrefix = "/authors/";
  if (std::string_view(key).starts_with(kPrefix)) key.erase(0, kPrefix.size());
  return key;
}

}  // namespace

std::vector<AuthorCandidate> ParseOpenLibrarySearch(std::string_view body) {
  std::vector<AuthorCandidate> out;
  try {
    auto doc = nlohmann::json::parse(body);
    for (const auto& d : doc.at("docs")) {
      AuthorCandidate candidate;
      candidate.author_id = StripAuthorsPrefix(d.at("key").get<std::string>());
      candidate.name = NormalizeName(d.value("name", std::string()));
      if (auto it = d.find("birth_date"); it != d.end() && it->is_string()) {
        candidate.birth_year = FirstYear(it->get<std::string>());
      }
      out.push_back(std::move(candidate));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("Open Library search results: {}", e.what()));
  }
  return out;
}

std::vector<AuthorCandidate> OpenLibraryAuthorSearch(Client& client, std::string_view name) {
  Request request{std::string(kOpenLibraryAuthorSearch), fmt::format("q={}", name),
                  fmt::format("{}?q={}", kOpenLibraryAuthorSearch, UrlEncode(name))};
  auto response = client.Fetch(request);
  CheckStatus(response, "Open Library author search");
  return ParseOpenLibrarySearch(response.body);
}

// --- sitemap ----------------------------------------------------------------------------

namespace {

void CollectLocs(const boost::property_tree::ptree& node, std::vector<std::string>& out) {
  for (const auto& [name, child] : node) {
    if (name == "loc") {
      out.push_back(child.get_value<std::string>());
    } else if (name != "<xmlattr>" && name != "<xmlcomment>") {
      CollectLocs(child, out);
    }
  }
}

std::optional<SitemapEntry> ParseAuthorUrl(std::string_view url) {
  // Author pages appear both as /author/show/<slug> and /author/list/<slug>.
  std::string_view slug;
  for (std::string_view marker : {"/author/show/", "/author/list/"}) {
    if (auto pos = url.find(marker); pos != std::string_view::npos) {
      slug = url.substr(pos + marker.size());
      break;
    }
  }
  if (slug.empty()) return std::nullopt;
  if (auto end = slug.find_first_of("?#/"); end != std::string_view::npos) slug = slug.substr(0, end);
  auto dot = slug.find('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  auto id = slug.substr(0, dot);
  for (char c : id) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  std::string name = PercentDecode(slug.substr(dot + 1));
  for (auto& c : name) {
    if (c == '_') c = ' ';
  }
  name = NormalizeName(name);
  if (name.empty()) return std::nullopt;
  return SitemapEntry{std::string(id), std::move(name)};
}

}  // namespace

std::vector<SitemapEntry> ParseSitemap(std::string_view xml) {
  if (IsBlank(xml)) return {};
  boost::property_tree::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw Error(ErrorCode::kParse, fmt::format("sitemap: {}", e.what()));
  }
  std::vector<std::string> locs;
  CollectLocs(tree, locs);

  std::vector<SitemapEntry> entries;
  std::set<SitemapEntry> seen;
  std::map<std::string, std::set<std::string>> ids_by_name;
  for (const auto& loc : locs) {
    auto entry = ParseAuthorUrl(NormalizeQuery(loc));
    if (!entry || !seen.insert(*entry).second) continue;
    ids_by_name[entry->name].insert(entry->author_id);
    entries.push_back(std::move(*entry));
  }
  std::vector<SitemapEntry> out;
  for (auto& entry : entries) {
    if (ids_by_name[entry.name].size() == 1) out.push_back(std::move(entry));
  }
  return out;
}

std::vector<SitemapEntry> SitemapAuthorNames(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open sitemap {}", file.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSitemap(buffer.str());
}

std::vector<SitemapEntry> SitemapAuthorNames(Client& client, std::string_view url) {
  Request request{std::string(url), "", std::string(url)};
  auto response = client.Fetch(request);
  CheckStatus(response, "sitemap");
  return ParseSitemap(response.body);
}

// --- ISBN ----------------------------------------------------------------------------------

std::optional<std::string> IsbnLookup(Client& client, std::string_view isbn13, Source target) {
  if (!IsValidIsbn13(isbn13)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid ISBN-13 '{}'", isbn13));
  }
  Request request;
  request.query = std::string(isbn13);
  switch (target) {
    case Source::kOpenLibrary:
      request.endpoint = std::string(kOpenLibraryIsbn);
      request.url = fmt::format("{}{}.json", kOpenLibraryIsbn, isbn13);
      break;
    case Source::kGoodreads:
      request.endpoint = std::string(kGoodreadsIsbn);
      request.url = fmt::format("{}{}", kGoodreadsIsbn, isbn13);
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("ISBN lookup is not supported for {}", SourceName(target)));
  }
  auto response = client.Fetch(request);
  if (response.status == 404) return std::nullopt;
  CheckStatus(response, "ISBN lookup");

  if (target == Source::kOpenLibrary) {
    try {
      auto doc = nlohmann::json::parse(response.body);
      auto authors = doc.find("authors");
      if (authors == doc.end() || !authors->is_array() || authors->empty()) return std::nullopt;
      return StripAuthorsPrefix(authors->front().at("key").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, fmt::format("Open Library edition record: {}", e.what()));
    }
  }
  static const std::regex kAuthorLink(R"(/author/show/([0-9]+))");
  std::smatch m;
  if (std::regex_search(response.body, m, kAuthorLink)) return m[1].str();
  return std::nullopt;
}

}  // namespace litgraph::connectors
