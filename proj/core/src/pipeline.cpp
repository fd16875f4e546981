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

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <json.hpp>

#include "litgraph/cache.hpp"
#include "litgraph/csv.hpp"
#include "litgraph/error.hpp"

namespace litgraph::pipeline {

namespace {

constexpr Source kPlatforms[] = {Source::kOpenLibrary, Source::kGoodreads};

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  return out;
}

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()));
  return in;
}

std::string Join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out.push_back(sep);
    out += s;
  }
  return out;
}

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> out;
  while (!text.empty()) {
    auto at = text.find(sep);
    if (auto item = text.substr(0, at); !item.empty()) out.emplace_back(item);
    text = at == std::string_view::npos ? std::string_view() : text.substr(at + 1);
  }
  return out;
}

std::filesystem::path DumpPath(const Config& config, Source source) {
  switch (source) {
    case Source::kWikidata: return config.wikidata_dump;
    case Source::kOpenLibrary: return config.openlibrary_dump;
    case Source::kGoodreads: return config.goodreads_dump;
    case Source::kViaf: return config.viaf_isbns;
  }
  return {};
}

void Absorb(Staging& staging, Source source, ingest::ParsedDump dump,
            std::vector<ingest::SourceAuthorRecord>& wikidata_all) {
  for (auto& record : dump.records) {
    if (auto* a = std::get_if<ingest::SourceAuthorRecord>(&record)) {
      if (source == Source::kWikidata) {
        wikidata_all.push_back(std::move(*a));
      } else {
        staging.platform_authors[source].push_back(std::move(*a));
      }
    } else {
      staging.works[source].push_back(std::get<ingest::SourceWorkRecord>(std::move(record)));
    }
  }
  auto& errors = staging.errors[source];
  errors.insert(errors.end(), dump.errors.begin(), dump.errors.end());
}

}  // namespace

Staging RunIngest(const Config& config) {
  Staging staging;
  std::vector<ingest::SourceAuthorRecord> wikidata_all;
  for (Source source : kWorkSources) {
    auto path = DumpPath(config, source);
    if (path.empty()) continue;
    Absorb(staging, source, ingest::ParseDump(path, source), wikidata_all);
  }
  auto selection = ingest::SelectAuthors(wikidata_all);
  staging.wikidata_authors = std::move(selection.kept);
  staging.rejected = std::move(selection.rejected);
  if (!config.viaf_isbns.empty()) {
    staging.viaf = ingest::ParseViafIsbnList(config.viaf_isbns);
    auto& errors = staging.errors[Source::kViaf];
    errors.insert(errors.end(), staging.viaf.errors.begin(), staging.viaf.errors.end());
  }
  return staging;
}

void WriteStaging(const Staging& staging, const std::filesystem::path& dir) {
  for (Source source : kWorkSources) {
    auto out = OpenOut(dir / fmt::format("{}.jsonl", SourceName(source)));
    if (source == Source::kWikidata) {
      for (const auto& a : staging.wikidata_authors) out << ingest::ToJsonLine(a) << '\n';
    } else if (auto it = staging.platform_authors.find(source); it != staging.platform_authors.end()) {
      for (const auto& a : it->second) out << ingest::ToJsonLine(a) << '\n';
    }
    if (auto it = staging.works.find(source); it != staging.works.end()) {
      for (const auto& w : it->second) out << ingest::ToJsonLine(w) << '\n';
    }
  }
  auto viaf = OpenOut(dir / "viaf.jsonl");
  for (const auto& [author, isbns] : staging.viaf.isbns_by_author) {
    nlohmann::ordered_json j;
    auto v = staging.viaf.viaf_by_author.find(author);
    j["viaf_id"] = v == staging.viaf.viaf_by_author.end() ? std::string() : v->second;
    j["wikidata_id"] = author;
    j["isbn13"] = isbns;
    viaf << j.dump() << '\n';
  }
  auto report = OpenOut(dir / "ingest_report.txt");
  WriteIngestReport(report, staging);
}

Staging ReadStaging(const std::filesystem::path& dir) {
  Staging staging;
  std::vector<ingest::SourceAuthorRecord> wikidata_all;
  for (Source source : kWorkSources) {
    auto path = dir / fmt::format("{}.jsonl", SourceName(source));
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorCode::kIo, fmt::format("missing staging file {}; run ingest first", path.string()));
    }
    auto dump = ingest::ParseDump(path, source);
    if (!dump.errors.empty()) {
      throw Error(ErrorCode::kValidation, fmt::format("{}:{}: {}", path.string(), dump.errors.front().line,
                                                      dump.errors.front().message));
    }
    Absorb(staging, source, std::move(dump), wikidata_all);
  }
  staging.wikidata_authors = std::move(wikidata_all);
  if (auto path = dir / "viaf.jsonl"; std::filesystem::exists(path)) {
    staging.viaf = ingest::ParseViafIsbnList(path);
  }
  return staging;
}

void WriteIngestReport(std::ostream& out, const Staging& staging) {
  out << fmt::format("selected wikidata authors: {}\n", staging.wikidata_authors.size());
  for (const auto& [reason, n] : staging.rejected) {
    out << fmt::format("rejected ({}): {}\n", ingest::RejectionReasonName(reason), n);
  }
  for (Source source : kPlatforms) {
    auto a = staging.platform_authors.find(source);
    out << fmt::format("{} authors: {}\n", SourceName(source),
                       a == staging.platform_authors.end() ? 0 : a->second.size());
  }
  for (Source source : kWorkSources) {
    auto w = staging.works.find(source);
    out << fmt::format("{} works: {}\n", SourceName(source), w == staging.works.end() ? 0 : w->second.size());
  }
  out << fmt::format("viaf isbn lists: {}\n", staging.viaf.isbns_by_author.size());
  for (const auto& [source, errors] : staging.errors) {
    out << fmt::format("{} record errors: {}\n", SourceName(source), errors.size());
    for (const auto& e : errors) out << fmt::format("  line {}: {}\n", e.line, e.message);
  }
}

std::unique_ptr<connectors::Client> MakeClient(const Config& config, bool offline) {
  connectors::ClientOptions options;
  options.mode = config.EffectiveMode(offline);
  options.requests_per_second = config.requests_per_second;
  options.max_retries = config.max_retries;
  std::shared_ptr<connectors::ResponseCache> cache;
  if (options.mode != connectors::Mode::kLive) {
    if (config.cache_dir.empty()) {
      throw Error(ErrorCode::kConfig, fmt::format("connector mode {} needs connectors.cache_dir",
                                                  connectors::ModeName(options.mode)));
    }
    cache = std::make_shared<connectors::ResponseCache>(config.cache_dir);
  }
  std::shared_ptr<connectors::HttpTransport> transport;
  if (options.mode != connectors::Mode::kReplay) transport = connectors::MakeHttpTransport();
  return std::make_unique<connectors::Client>(options, std::move(cache), std::move(transport));
}

std::vector<align::KgAuthor> KgAuthors(const Staging& staging) {
  std::vector<align::KgAuthor> out;
  for (const auto& a : staging.wikidata_authors) {
    out.push_back({a.source_id, a.name, a.birth_year, a.external_ids});
  }
  return out;
}

align::NameDirectory PlatformNames(const Staging& staging) {
  align::NameDirectory names;
  for (const auto& [source, authors] : staging.platform_authors) {
    for (const auto& a : authors) names[{source, a.source_id}] = a.name;
  }
  return names;
}

AlignOutput RunAlign(const Config& config, const Staging& staging, connectors::Client& client,
                     double threshold) {
  align::ValidateThreshold(threshold);
  AlignOutput out;
  const auto kg = KgAuthors(staging);
  const auto names = PlatformNames(staging);

  std::vector<align::AlignmentCandidate> candidates = align::PreexistingLinks(kg, names);

  for (const auto& author : kg) {
    auto found = align::HeuristicExactMatch(author, connectors::OpenLibraryAuthorSearch(client, author.name));
    candidates.insert(candidates.end(), found.begin(), found.end());
  }

  if (!config.goodreads_sitemap.empty()) {
    auto found = align::HeuristicSitemapMatch(kg, connectors::SitemapAuthorNames(config.goodreads_sitemap));
    candidates.insert(candidates.end(), found.begin(), found.end());
  }

  auto bridge = align::HeuristicIsbnBridge(
      kg, staging.viaf.isbns_by_author,
      [&client](const std::string& isbn, Source target) { return connectors::IsbnLookup(client, isbn, target); },
      names);
  candidates.insert(candidates.end(), bridge.candidates.begin(), bridge.candidates.end());
  out.warnings = std::move(bridge.warnings);

  out.candidates = align::ApplyThreshold(std::move(candidates), threshold);
  std::sort(out.candidates.begin(), out.candidates.end(), align::CandidateLess);
  out.links = align::ResolveLinks(out.candidates);
  for (const auto& c : out.links.rejected) {
    if (c.heuristic == align::Heuristic::kPreexistingLink) {
      out.warnings.push_back(fmt::format("dropped preexisting {} link {} -> {} ('{}' vs '{}', similarity {})",
                                         SourceName(c.right.source), c.left.source_id, c.right.source_id,
                                         c.left.name, c.right.name, align::FormatSimilarity(c.similarity)));
    }
  }
  for (const auto& w : out.warnings) spdlog::warn("{}", w);
  return out;
}

void WriteAlignOutput(const AlignOutput& output, const std::filesystem::path& dir) {
  {
    auto f = OpenOut(dir / "candidates.csv");
    align::WriteCandidatesCsv(f, output.candidates);
  }
  {
    auto f = OpenOut(dir / "accepted.csv");
    align::WriteCandidatesCsv(f, output.links.accepted);
  }
  {
    auto f = OpenOut(dir / "rejected.csv");
    align::WriteCandidatesCsv(f, output.links.rejected);
  }
  {
    auto f = OpenOut(dir / "conflicting.csv");
    align::WriteCandidatesCsv(f, output.links.conflicting);
  }
  auto log = OpenOut(dir / "align.log");
  for (const auto& w : output.warnings) log << w << '\n';
}

std::vector<align::AlignmentCandidate> ReadAcceptedLinks(const std::filesystem::path& dir) {
  auto in = OpenIn(dir / "accepted.csv");
  return align::ReadCandidatesCsv(in);
}

std::vector<AuthorEntity> UnifyAuthors(const Staging& staging,
                                       const std::vector<align::AlignmentCandidate>& accepted,
                                       const IriMinter& minter) {
  std::map<std::string, std::map<Source, std::string>> links;
  for (const auto& c : accepted) {
    if (c.accepted) links[c.left.source_id][c.right.source] = c.right.source_id;
  }
  const auto& occupations = ingest::OccupationTable::Default();
  std::vector<AuthorEntity> out;
  for (const auto& r : staging.wikidata_authors) {
    AuthorEntity a;
    a.iri = minter.Mint(Source::kWikidata, r.source_id, EntityKind::kAuthor);
    a.name = r.name;
    a.birth_year = r.birth_year.value_or(0);
    a.birth_country = r.birth_country.value_or("");
    a.death_year = r.death_year;
    a.citizenships = r.citizenships;
    a.ethnic_group = r.ethnic_group;
    a.gender = r.gender;
    for (const auto& o : r.occupations) a.occupations.push_back(occupations.Resolve(o).value_or(o));
    std::sort(a.occupations.begin(), a.occupations.end());
    a.occupations.erase(std::unique(a.occupations.begin(), a.occupations.end()), a.occupations.end());
    a.wikipedia_url = r.wikipedia_url;
    a.external_ids[Source::kWikidata] = r.source_id;
    // Platform ids come only from accepted links; raw record links below the
    // threshold are not carried over.
    if (auto it = r.external_ids.find(Source::kViaf); it != r.external_ids.end()) {
      a.external_ids[Source::kViaf] = it->second;
    } else if (auto v = staging.viaf.viaf_by_author.find(r.source_id);
               v != staging.viaf.viaf_by_author.end() && !v->second.empty()) {
      a.external_ids[Source::kViaf] = v->second;
    }
    if (auto it = links.find(r.source_id); it != links.end()) {
      for (const auto& [source, id] : it->second) a.external_ids[source] = id;
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const AuthorEntity& x, const AuthorEntity& y) { return x.iri < y.iri; });
  return out;
}

void Classify(std::vector<AuthorEntity>& authors, const classify::RegionTable& table) {
  for (auto& a : authors) a.roles = classify::ClassifyTransnational(a, table);
}

void WriteRoles(std::ostream& out, const std::vector<AuthorEntity>& authors) {
  csv::WriteRow(out, {"wikidata_id", "name", "birth_country", "birth_year", "citizenships", "ethnic_group", "roles"});
  for (const auto& a : authors) {
    auto id = a.external_ids.find(Source::kWikidata);
    csv::WriteRow(out, {id == a.external_ids.end() ? std::string() : id->second, a.name, a.birth_country,
                   std::to_string(a.birth_year), Join(a.citizenships, ';'), a.ethnic_group.value_or(""),
                   Join(std::vector<std::string>(a.roles.begin(), a.roles.end()), ';')});
  }
}

std::map<std::string, std::set<std::string>> ReadRoles(std::istream& in) {
  std::map<std::string, std::set<std::string>> out;
  auto rows = csv::ReadAll(in);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 7) {
      throw Error(ErrorCode::kParse, fmt::format("roles.csv row {}: expected 7 columns", i + 1));
    }
    auto roles = Split(rows[i][6], ';');
    out[rows[i][0]] = std::set<std::string>(roles.begin(), roles.end());
  }
  return out;
}

graphbuild::BuildInput AssembleBuildInput(const Staging& staging, std::vector<AuthorEntity> authors,
                                          const IriMinter& minter) {
  graphbuild::BuildInput input;
  std::map<std::pair<Source, std::string>, Iri> author_by_source_id;
  for (const auto& a : authors) {
    for (const auto& [source, id] : a.external_ids) author_by_source_id[{source, id}] = a.iri;
  }
  for (Source source : kWorkSources) {
    auto it = staging.works.find(source);
    if (it == staging.works.end()) continue;
    for (const auto& r : it->second) {
      auto author = author_by_source_id.find({source, r.author_source_id});
      if (author == author_by_source_id.end()) {
        ++input.unlinked_works;
        continue;
      }
      WorkExpression w;
      w.iri = minter.Mint(source, r.source_id, EntityKind::kWork);
      w.source_id = r.source_id;
      w.title = r.title;
      w.author_iri = author->second;
      w.source = source;
      w.language = r.language;
      w.subjects = r.subjects;
      w.avg_rating = r.avg_rating;
      w.ratings_count = r.ratings_count;
      w.readers_count = r.readers_count;
      for (const auto& e : r.editions) {
        Edition edition;
        edition.iri = minter.Mint(source, e.edition_id, EntityKind::kEdition);
        edition.expression_iri = w.iri;
        edition.isbn13 = e.isbn13;
        edition.publication.event_id = graphbuild::PublicationNodeId(source, e.edition_id);
        edition.publication.year = e.publish_year;
        edition.publication.country = e.publish_country;
        edition.publication.language = e.language;
        edition.publication.publisher = e.publisher;
        for (const auto& c : e.contributors) edition.publication.associated_agents.push_back({c.name, c.role});
        w.edition_iris.push_back(edition.iri);
        input.editions.push_back(std::move(edition));
      }
      input.works.push_back(std::move(w));
    }
  }
  input.authors = std::move(authors);
  return input;
}

classify::RegionTable LoadRegionTable(const Config& config) {
  if (config.regions_csv.empty() && config.minority_groups.empty()) return classify::RegionTable::Default();
  auto slurp = [](const std::filesystem::path& p) {
    auto in = OpenIn(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto& defaults = classify::RegionTable::Default();
  if (config.regions_csv.empty() || config.minority_groups.empty()) {
    // Only one side overridden: load it and keep the bundled other half.
    classify::RegionTable table = defaults;
    if (!config.regions_csv.empty()) {
      auto loaded = classify::RegionTable::FromCsv(slurp(config.regions_csv), "");
      table.regions = loaded.regions;
      table.country_names = loaded.country_names;
    } else {
      table.minority_groups = classify::RegionTable::FromCsv("", slurp(config.minority_groups)).minority_groups;
    }
    return table;
  }
  return classify::RegionTable::Load(config.regions_csv, config.minority_groups);
}

PipelineResult RunAll(const Config& config, bool offline) {
  const IriMinter minter(config.namespace_base);
  const auto regions = LoadRegionTable(config);
  PipelineResult result;
  result.staging = RunIngest(config);
  auto client = MakeClient(config, offline);
  result.alignment = RunAlign(config, result.staging, *client, config.threshold);
  result.authors = UnifyAuthors(result.staging, result.alignment.links.accepted, minter);
  Classify(result.authors, regions);
  auto input = AssembleBuildInput(result.staging, result.authors, minter);
  result.graph = graphbuild::Build(input, minter, regions);
  return result;
}

}  // namespace litgraph::pipeline
