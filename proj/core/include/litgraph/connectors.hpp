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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litgraph/cache.hpp"
#include "litgraph/model.hpp"

namespace litgraph::connectors {

enum class Mode { kLive, kRecord, kReplay };

inline constexpr std::string_view kModeEnvVar = "LITGRAPH_CONNECTOR_MODE";

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);
// Mode named by LITGRAPH_CONNECTOR_MODE, if set and valid.
std::optional<Mode> ModeFromEnvironment();

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Throws Error{kNetwork} when no response could be obtained.
  virtual HttpResponse Get(const std::string& url) = 0;
};

// cpp-httplib backed transport, http and https.
std::shared_ptr<HttpTransport> MakeHttpTransport(std::chrono::seconds timeout = std::chrono::seconds(30));

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using Clock = std::function<std::chrono::steady_clock::time_point()>;

// Enforces a minimum spacing between requests to the same host.
class RateLimiter {
 public:
  RateLimiter(double requests_per_second, Sleeper sleeper, Clock clock);

  void Acquire(const std::string& host);

 private:
  std::chrono::nanoseconds interval_;
  Sleeper sleeper_;
  Clock clock_;
  std::mutex mutex_;
  std::map<std::string, std::chrono::steady_clock::time_point> next_slot_;
};

std::string HostOf(std::string_view url);

struct ClientOptions {
  Mode mode = Mode::kReplay;
  double requests_per_second = 1.0;
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
};

struct Request {
  std::string endpoint;
  std::string query;  // logical query; cache key input
  std::string url;    // what is actually fetched in live/record mode
};

// All outbound traffic goes through Fetch: replay mode serves only from the
// cache, record mode fills it, live mode bypasses it.
class Client {
 public:
  Client(ClientOptions options, std::shared_ptr<ResponseCache> cache,
         std::shared_ptr<HttpTransport> transport, Sleeper sleeper = {}, Clock clock = {});

  // Throws Error{kReplayMiss} on a replay-mode miss and Error{kNetwork} once
  // retries are exhausted.
  HttpResponse Fetch(const Request& request);

  Mode mode() const noexcept { return options_.mode; }
  std::size_t network_requests() const noexcept { return network_requests_; }

 private:
  HttpResponse FetchWithRetry(const Request& request);

  ClientOptions options_;
  std::shared_ptr<ResponseCache> cache_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  Clock clock_;
  RateLimiter limiter_;
  std::size_t network_requests_ = 0;
};

// --- SPARQL ------------------------------------------------------------------

inline constexpr std::string_view kWikidataSparqlEndpoint = "https://query.wikidata.org/sparql";

struct SparqlResult {
  std::vector<std::string> variables;
  std::vector<std::map<std::string, std::string>> rows;
};

// SELECT over the SPARQL 1.1 protocol with JSON results. Queries without their
// own LIMIT are paged with LIMIT/OFFSET until a short page arrives.
SparqlResult SparqlSelect(Client& client, std::string_view endpoint, std::string_view query,
                          std::size_t page_size = 1000);

std::string PagedQuery(std::string_view query, std::size_t limit, std::size_t offset);

// --- Open Library --------------------------------------------------------------

inline constexpr std::string_view kOpenLibraryAuthorSearch =
    "https://openlibrary.org/search/authors.json";
inline constexpr std::string_view kOpenLibraryIsbn = "https://openlibrary.org/isbn/";
inline constexpr std::string_view kGoodreadsIsbn = "https://www.goodreads.com/book/isbn/";

struct AuthorCandidate {
  std::string author_id;
  std::string name;
  std::optional<int> birth_year;
};

std::vector<AuthorCandidate> OpenLibraryAuthorSearch(Client& client, std::string_view name);
std::vector<AuthorCandidate> ParseOpenLibrarySearch(std::string_view body);

// --- Goodreads sitemap ----------------------------------------------------------

struct SitemapEntry {
  std::string author_id;
  std::string name;

  auto operator<=>(const SitemapEntry&) const = default;
};

// Parses <loc> entries of the form .../author/show/<id>.<Name_With_Underscores>.
// Names carried by more than one distinct id are dropped. Throws
// Error{kParse} for malformed XML.
std::vector<SitemapEntry> ParseSitemap(std::string_view xml);
std::vector<SitemapEntry> SitemapAuthorNames(const std::filesystem::path& file);
std::vector<SitemapEntry> SitemapAuthorNames(Client& client, std::string_view url);

// --- ISBN lookup ------------------------------------------------------------------

// Target platform author id for an ISBN-13; nullopt when the platform has
// no record (HTTP 404). Throws Error{kInvalidArgument} for invalid ISBNs.
std::optional<std::string> IsbnLookup(Client& client, std::string_view isbn13, Source target);

}  // namespace litgraph::connectors
