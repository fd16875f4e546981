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

#include "litgraph/cache.hpp"

#include <fstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include <json.hpp>

#include "litgraph/error.hpp"

namespace litgraph::connectors {

std::string NormalizeQuery(std::string_view query) {
  std::string out;
  out.reserve(query.size());
  bool pending_space = false;
  for (char c : query) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string RequestKey(std::string_view endpoint, std::string_view query) {
  std::string material = std::string(endpoint) + "\n" + NormalizeQuery(query);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(material.data(), material.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

ResponseCache::ResponseCache(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot create cache directory {}: {}", directory_.string(), ec.message()));
  }
  Load();
}

void ResponseCache::Load() {
  std::ifstream index(directory_ / kIndexFile);
  if (!index) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto obj = nlohmann::json::parse(line);
      Entry entry;
      entry.offset = obj.at("offset").get<std::uint64_t>();
      entry.length = obj.at("length").get<std::uint64_t>();
      entry.status = obj.at("status").get<int>();
      entry.fetched_at = obj.at("fetched_at").get<std::int64_t>();
      entries_[obj.at("key").get<std::string>()] = entry;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, fmt::format("cache index {}:{}: {}",
                                                 (directory_ / kIndexFile).string(), line_no, e.what()));
    }
  }
}

std::optional<CachedResponse> ResponseCache::Get(std::string_view key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  std::ifstream content(directory_ / kContentFile, std::ios::binary);
  if (!content) throw Error(ErrorCode::kIo, "cache content file missing");
  CachedResponse response;
  response.request_key = std::string(key);
  response.status = it->second.status;
  response.fetched_at = it->second.fetched_at;
  response.body.resize(it->second.length);
  content.seekg(static_cast<std::streamoff>(it->second.offset));
  content.read(response.body.data(), static_cast<std::streamsize>(it->second.length));
  if (!content) throw Error(ErrorCode::kIo, "cache content file truncated");
  return response;
}

CachedResponse ResponseCache::Put(std::string_view endpoint, std::string_view query, int status,
                                  std::string_view body, std::int64_t fetched_at) {
  std::unique_lock lock(mutex_);
  auto key = RequestKey(endpoint, query);
  auto content_path = directory_ / kContentFile;
  std::uint64_t offset = 0;
  std::error_code ec;
  if (std::filesystem::exists(content_path, ec)) offset = std::filesystem::file_size(content_path);
  {
    std::ofstream content(content_path, std::ios::binary | std::ios::app);
    content.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!content) throw Error(ErrorCode::kIo, "cannot append to cache content file");
  }
  nlohmann::ordered_json entry;
  entry["key"] = key;
  entry["endpoint"] = endpoint;
  entry["query"] = NormalizeQuery(query);
  entry["status"] = status;
  entry["fetched_at"] = fetched_at;
  entry["offset"] = offset;
  entry["length"] = body.size();
  {
    std::ofstream index(directory_ / kIndexFile, std::ios::app);
    index << entry.dump() << '\n';
    if (!index) throw Error(ErrorCode::kIo, "cannot append to cache index");
  }
  entries_[key] = Entry{offset, body.size(), status, fetched_at};
  return CachedResponse{key, std::string(body), fetched_at, status};
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace litgraph::connectors
