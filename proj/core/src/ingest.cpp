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

#include "litgraph/ingest.hpp"

#include <cctype>

#include <fmt/format.h>

#include <json.hpp>

#include "litgraph/error.hpp"
#include "litgraph/isbn.hpp"
#include "litgraph/unicode.hpp"

namespace litgraph::ingest {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

std::optional<std::string> OptString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) Invalid(fmt::format("'{}' must be a string", key));
  auto value = it->get<std::string>();
  if (IsBlank(value)) return std::nullopt;
  return value;
}

std::string ReqString(const json& obj, const char* key) {
  auto value = OptString(obj, key);
  if (!value) Invalid(fmt::format("missing required field '{}'", key));
  return *value;
}

std::optional<long long> OptInteger(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) Invalid(fmt::format("'{}' must be an integer", key));
  return it->get<long long>();
}

std::optional<int> OptYear(const json& obj, const char* key) {
  auto value = OptInteger(obj, key);
  if (!value) return std::nullopt;
  if (*value < -9999 || *value > 9999) Invalid(fmt::format("'{}' out of range", key));
  return static_cast<int>(*value);
}

std::optional<double> OptNumber(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) Invalid(fmt::format("'{}' must be a number", key));
  return it->get<double>();
}

std::vector<std::string> StringList(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) Invalid(fmt::format("'{}' must be an array", key));
  for (const auto& v : *it) {
    if (!v.is_string()) Invalid(fmt::format("'{}' entries must be strings", key));
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string CountryCode(const std::string& raw, const char* key) {
  if (raw.size() != 2 || !std::isalpha(static_cast<unsigned char>(raw[0])) ||
      !std::isalpha(static_cast<unsigned char>(raw[1]))) {
    Invalid(fmt::format("'{}' must be an ISO 3166-1 alpha-2 code, got '{}'", key, raw));
  }
  std::string out = raw;
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<std::string> OptCountry(const json& obj, const char* key) {
  auto raw = OptString(obj, key);
  if (!raw) return std::nullopt;
  return CountryCode(*raw, key);
}

std::optional<std::string> OptLanguage(const json& obj, const char* key) {
  auto raw = OptString(obj, key);
  if (!raw) return std::nullopt;
  std::string out = *raw;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

long long NonNegative(long long v, const char* key) {
  if (v < 0) Invalid(fmt::format("'{}' must be non-negative", key));
  return v;
}

SourceEditionRecord ParseEdition(const json& obj) {
  if (!obj.is_object()) Invalid("edition entries must be objects");
  SourceEditionRecord edition;
  edition.edition_id = ReqString(obj, "id");
  edition.publish_year = OptYear(obj, "publish_year");
  edition.publish_country = OptCountry(obj, "publish_country");
  edition.language = OptLanguage(obj, "language");
  if (auto publisher = OptString(obj, "publisher")) edition.publisher = NormalizeName(*publisher);
  for (const auto& raw : StringList(obj, "isbn13")) {
    auto isbn = CompactIsbn(raw);
    if (!IsValidIsbn13(isbn)) {
      Invalid(fmt::format("edition {}: invalid ISBN-13 '{}'", edition.edition_id, raw));
    }
    edition.isbn13.push_back(isbn);
  }
  if (auto it = obj.find("contributors"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) Invalid("'contributors' must be an array");
    for (const auto& c : *it) {
      Contributor contributor;
      contributor.name = NormalizeName(ReqString(c, "name"));
      contributor.role = ReqString(c, "role");
      edition.contributors.push_back(std::move(contributor));
    }
  }
  return edition;
}

SourceAuthorRecord ParseAuthor(const json& obj, Source source) {
  SourceAuthorRecord author;
  author.source = source;
  author.source_id = ReqString(obj, "id");
  author.name = NormalizeName(ReqString(obj, "name"));
  if (author.name.empty()) Invalid("name is empty after normalization");
  author.birth_year = OptYear(obj, "birth_year");
  author.birth_country = OptCountry(obj, "birth_country");
  author.death_year = OptYear(obj, "death_year");
  for (const auto& c : StringList(obj, "citizenships")) {
    author.citizenships.push_back(CountryCode(c, "citizenships"));
  }
  author.ethnic_group = OptString(obj, "ethnic_group");
  author.gender = OptString(obj, "gender");
  author.occupations = StringList(obj, "occupations");
  if (auto it = obj.find("external_ids"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) Invalid("'external_ids' must be an object");
    for (const auto& [key, value] : it->items()) {
      auto id_source = ParseSource(key);
      if (!id_source) Invalid(fmt::format("unknown external id source '{}'", key));
      if (value.is_null()) continue;
      if (!value.is_string()) Invalid("external ids must be strings");
      auto id = value.get<std::string>();
      if (!IsBlank(id)) author.external_ids[*id_source] = id;
    }
  }
  author.wikipedia_url = OptString(obj, "wikipedia_url");
  return author;
}

SourceWorkRecord ParseWork(const json& obj, Source source) {
  SourceWorkRecord work;
  work.source = source;
  work.source_id = ReqString(obj, "id");
  work.author_source_id = ReqString(obj, "author_id");
  work.title = NormalizeName(ReqString(obj, "title"));
  if (work.title.empty()) Invalid("title is empty after normalization");
  work.language = OptLanguage(obj, "language");
  for (const auto& s : StringList(obj, "subjects")) {
    auto subject = NormalizeName(s);
    if (!subject.empty()) work.subjects.push_back(std::move(subject));
  }
  work.avg_rating = OptNumber(obj, "avg_rating");
  if (auto v = OptInteger(obj, "ratings_count")) work.ratings_count = NonNegative(*v, "ratings_count");
  if (auto v = OptInteger(obj, "readers_count")) work.readers_count = NonNegative(*v, "readers_count");
  if (work.avg_rating) {
    if (*work.avg_rating < 0.0 || *work.avg_rating > 5.0) Invalid("'avg_rating' outside [0,5]");
    if (!work.ratings_count || *work.ratings_count < 1) {
      Invalid("'avg_rating' requires 'ratings_count' >= 1");
    }
  }
  if (auto it = obj.find("editions"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) Invalid("'editions' must be an array");
    for (const auto& e : *it) work.editions.push_back(ParseEdition(e));
  }
  return work;
}

}  // namespace

std::size_t RecordLine(const SourceRecord& record) {
  return std::visit([](const auto& r) { return r.line; }, record);
}

SourceRecord ParseRecordLine(std::string_view line, Source expected_source) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("malformed JSON: {}", e.what()));
  }
  if (!obj.is_object()) throw Error(ErrorCode::kParse, "record is not a JSON object");
  auto tag = OptString(obj, "source");
  if (!tag) Invalid("missing source tag");
  if (ParseSource(*tag) != expected_source) {
    Invalid(fmt::format("wrong source tag '{}' (expected '{}')", *tag, SourceName(expected_source)));
  }
  auto kind = ReqString(obj, "kind");
  if (kind == "author") return ParseAuthor(obj, expected_source);
  if (kind == "work") {
    if (!IsWorkSource(expected_source)) Invalid("this source carries no works");
    return ParseWork(obj, expected_source);
  }
  Invalid(fmt::format("unknown record kind '{}'", kind));
}

DumpReader::DumpReader(const std::filesystem::path& path, Source expected_source)
    : in_(path), source_(expected_source) {
  if (!in_) throw Error(ErrorCode::kIo, fmt::format("cannot open dump {}", path.string()));
}

std::optional<SourceRecord> DumpReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) continue;
    try {
      auto record = ParseRecordLine(line, source_);
      std::visit([this](auto& r) { r.line = line_; }, record);
      const auto& id = std::visit([](const auto& r) -> const std::string& { return r.source_id; }, record);
      if (!seen_.emplace(static_cast<int>(record.index()), id).second) {
        errors_.push_back({line_, fmt::format("duplicate record id '{}'", id)});
        continue;
      }
      return record;
    } catch (const Error& e) {
      errors_.push_back({line_, e.what()});
    }
  }
  return std::nullopt;
}

ParsedDump ParseDump(const std::filesystem::path& path, Source source) {
  DumpReader reader(path, source);
  ParsedDump out;
  while (auto record = reader.Next()) out.records.push_back(std::move(*record));
  out.errors = reader.errors();
  return out;
}

namespace {

template <typename T>
void PutOpt(ordered_json& obj, const char* key, const std::optional<T>& value) {
  if (value) obj[key] = *value;
}

}  // namespace

std::string ToJsonLine(const SourceRecord& record) {
  ordered_json obj;
  if (const auto* a = std::get_if<SourceAuthorRecord>(&record)) {
    obj["source"] = SourceName(a->source);
    obj["kind"] = "author";
    obj["id"] = a->source_id;
    obj["name"] = a->name;
    PutOpt(obj, "birth_year", a->birth_year);
    PutOpt(obj, "birth_country", a->birth_country);
    PutOpt(obj, "death_year", a->death_year);
    if (!a->citizenships.empty()) obj["citizenships"] = a->citizenships;
    PutOpt(obj, "ethnic_group", a->ethnic_group);
    PutOpt(obj, "gender", a->gender);
    if (!a->occupations.empty()) obj["occupations"] = a->occupations;
    if (!a->external_ids.empty()) {
      ordered_json ids = ordered_json::object();
      for (const auto& [src, id] : a->external_ids) ids[std::string(SourceName(src))] = id;
      obj["external_ids"] = ids;
    }
    PutOpt(obj, "wikipedia_url", a->wikipedia_url);
  } else {
    const auto& w = std::get<SourceWorkRecord>(record);
    obj["source"] = SourceName(w.source);
    obj["kind"] = "work";
    obj["id"] = w.source_id;
    obj["author_id"] = w.author_source_id;
    obj["title"] = w.title;
    PutOpt(obj, "language", w.language);
    if (!w.subjects.empty()) obj["subjects"] = w.subjects;
    PutOpt(obj, "avg_rating", w.avg_rating);
    PutOpt(obj, "ratings_count", w.ratings_count);
    PutOpt(obj, "readers_count", w.readers_count);
    if (!w.editions.empty()) {
      ordered_json editions = ordered_json::array();
      for (const auto& e : w.editions) {
        ordered_json ed;
        ed["id"] = e.edition_id;
        PutOpt(ed, "publish_year", e.publish_year);
        PutOpt(ed, "publish_country", e.publish_country);
        PutOpt(ed, "language", e.language);
        PutOpt(ed, "publisher", e.publisher);
        if (!e.isbn13.empty()) ed["isbn13"] = e.isbn13;
        if (!e.contributors.empty()) {
          ordered_json contributors = ordered_json::array();
          for (const auto& c : e.contributors) contributors.push_back({{"name", c.name}, {"role", c.role}});
          ed["contributors"] = contributors;
        }
        editions.push_back(std::move(ed));
      }
      obj["editions"] = editions;
    }
  }
  return obj.dump();
}

// --- author selection -----------------------------------------------------------

const OccupationTable& OccupationTable::Default() {
  static const OccupationTable table{
      {{"Q36180", "writer"}, {"Q6625963", "novelist"}, {"Q49757", "poet"}},
      {"writer", "novelist", "poet"},
  };
  return table;
}

std::optional<std::string> OccupationTable::Resolve(std::string_view occupation) const {
  if (auto it = code_to_label.find(occupation); it != code_to_label.end()) return it->second;
  if (auto it = accepted_labels.find(occupation); it != accepted_labels.end()) return *it;
  return std::nullopt;
}

std::string_view RejectionReasonName(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::kOccupation: return "occupation";
    case RejectionReason::kBirthYear: return "birth_year";
    case RejectionReason::kBirthCountry: return "birth_country";
  }
  return "unknown";
}

std::optional<RejectionReason> CheckAuthor(const SourceAuthorRecord& record,
                                           const OccupationTable& table) {
  bool occupation_ok = false;
  for (const auto& occupation : record.occupations) {
    if (table.Resolve(occupation)) {
      occupation_ok = true;
      break;
    }
  }
  if (!occupation_ok) return RejectionReason::kOccupation;
  if (!record.birth_year || *record.birth_year < kMinimumBirthYear) return RejectionReason::kBirthYear;
  if (!record.birth_country) return RejectionReason::kBirthCountry;
  return std::nullopt;
}

SelectionResult SelectAuthors(const std::vector<SourceAuthorRecord>& records,
                              const OccupationTable& table) {
  SelectionResult result;
  for (const auto& record : records) {
    if (auto reason = CheckAuthor(record, table)) {
      ++result.rejected[*reason];
    } else {
      result.kept.push_back(record);
    }
  }
  return result;
}

ViafIsbnList ParseViafIsbnList(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open VIAF isbn list {}", path.string()));
  ViafIsbnList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kParse, fmt::format("malformed JSON: {}", e.what()));
      }
      auto author = ReqString(obj, "wikidata_id");
      auto viaf = ReqString(obj, "viaf_id");
      std::vector<std::string> isbns;
      for (const auto& raw : StringList(obj, "isbn13")) {
        auto isbn = CompactIsbn(raw);
        if (!IsValidIsbn13(isbn)) Invalid(fmt::format("invalid ISBN-13 '{}'", raw));
        isbns.push_back(isbn);
      }
      out.viaf_by_author[author] = viaf;
      auto& list = out.isbns_by_author[author];
      list.insert(list.end(), isbns.begin(), isbns.end());
    } catch (const Error& e) {
      out.errors.push_back({line_no, e.what()});
    }
  }
  return out;
}

}  // namespace litgraph::ingest
