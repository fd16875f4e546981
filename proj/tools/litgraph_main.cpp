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

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "litgraph/align.hpp"
#include "litgraph/cache.hpp"
#include "litgraph/config.hpp"
#include "litgraph/connectors.hpp"
#include "litgraph/csv.hpp"
#include "litgraph/error.hpp"
#include "litgraph/graphbuild.hpp"
#include "litgraph/pipeline.hpp"
#include "litgraph/qa.hpp"
#include "litgraph/serialize.hpp"
#include "litgraph/service.hpp"
#include "litgraph/stats.hpp"

namespace fs = std::filesystem;
using namespace litgraph;

namespace {

// Exit codes: 0 ok, 1 data error, 2 usage or configuration error, 3 I/O
// error, 4 network failure or replay miss.
int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kIo: return 3;
    case ErrorCode::kNetwork:
    case ErrorCode::kReplayMiss: return 4;
    default: return 1;
  }
}

struct Options {
  std::string config_path;
  bool offline = false;
  bool verbose = false;

  std::string out;
  std::string staging_dir;
  std::string links_dir;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> per_bucket;
  std::string candidates;
  std::string worksheet;
  std::string roles;
  std::string fixtures;
  bool no_derived = false;
  std::string format;
  std::string store;
  std::optional<int> port;
  std::string bind;
  std::string static_dir;
  std::string query_file;
  std::string endpoint = std::string(connectors::kWikidataSparqlEndpoint);

  std::string cache_dir;
  std::string cache_endpoint;
  std::string cache_query;
  std::string body_file;
  int status = 200;
};

Config LoadConfig(const Options& o) {
  Config c;
  if (!o.config_path.empty()) {
    c = Config::Load(o.config_path);
  } else if (fs::exists("litgraph.json")) {
    c = Config::Load("litgraph.json");
  }
  c.ApplyEnvironment();
  return c;
}

fs::path OrDefault(const std::string& flag, const fs::path& fallback) {
  return flag.empty() ? fallback : fs::path(flag);
}

std::ofstream OpenOut(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  return out;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()));
  return in;
}

std::string Slurp(const fs::path& path) {
  auto in = OpenIn(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path StagingDir(const Options& o, const Config& c) { return OrDefault(o.staging_dir, c.work_dir / "staging"); }
fs::path LinksDir(const Options& o, const Config& c) { return OrDefault(o.links_dir, c.work_dir / "links"); }

fs::path StorePath(const Options& o, const Config& c) {
  if (!o.store.empty()) return o.store;
  if (!c.store_path.empty()) return c.store_path;
  return c.work_dir / "graph.nt";
}

void WriteBuildOutputs(const graphbuild::BuiltGraph& graph, const fs::path& out, bool include_derived,
                       rdf::Format format, const std::string& namespace_base) {
  rdf::ExportFile(*graph.store, out, {format, include_derived, namespace_base});
  auto dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  auto text = OpenOut(dir / "build_report.txt");
  graphbuild::WriteReportText(text, graph.report);
  auto csv = OpenOut(dir / "build_report.csv");
  graphbuild::WriteReportCsv(csv, graph.report);
}

rdf::Format FormatFor(const std::string& flag, const fs::path& out) {
  if (!flag.empty()) {
    auto f = rdf::ParseFormat(flag);
    if (!f) throw Error(ErrorCode::kConfig, fmt::format("unknown format '{}'", flag));
    return *f;
  }
  return out.extension() == ".ttl" ? rdf::Format::kTurtle : rdf::Format::kNTriples;
}

int CmdIngest(const Options& o) {
  auto c = LoadConfig(o);
  auto staging = pipeline::RunIngest(c);
  auto dir = OrDefault(o.out, c.work_dir / "staging");
  pipeline::WriteStaging(staging, dir);
  pipeline::WriteIngestReport(std::cout, staging);
  return 0;
}

int CmdAlign(const Options& o) {
  auto c = LoadConfig(o);
  double threshold = o.threshold.value_or(c.threshold);
  align::ValidateThreshold(threshold);
  auto staging = pipeline::ReadStaging(StagingDir(o, c));
  auto client = pipeline::MakeClient(c, o.offline);
  auto output = pipeline::RunAlign(c, staging, *client, threshold);
  auto dir = OrDefault(o.out, c.work_dir / "links");
  pipeline::WriteAlignOutput(output, dir);
  std::cout << fmt::format("candidates: {}\naccepted: {}\nrejected: {}\nconflicting: {}\nwarnings: {}\n",
                           output.candidates.size(), output.links.accepted.size(),
                           output.links.rejected.size(), output.links.conflicting.size(),
                           output.warnings.size());
  return 0;
}

int CmdQaSample(const Options& o) {
  auto c = LoadConfig(o);
  auto path = OrDefault(o.candidates, LinksDir(o, c) / "candidates.csv");
  auto in = OpenIn(path);
  auto candidates = align::ReadCandidatesCsv(in);
  auto samples = align::SampleForQa(candidates, o.seed.value_or(c.qa_seed), o.per_bucket.value_or(c.qa_per_bucket));
  auto out = OpenOut(OrDefault(o.out, c.work_dir / "qa" / "worksheet.csv"));
  align::WriteWorksheet(out, samples);
  for (const auto& s : samples) {
    std::cout << fmt::format("{} {}\n", align::BucketLabel(s.bucket), s.pairs.size());
  }
  return 0;
}

int CmdQaScore(const Options& o) {
  auto c = LoadConfig(o);
  auto in = OpenIn(OrDefault(o.worksheet, c.work_dir / "qa" / "worksheet.csv"));
  auto report = align::ScoreQa(align::ReadWorksheet(in));
  auto dir = OrDefault(o.out, c.work_dir / "qa");
  auto csv = OpenOut(dir / "accuracy.csv");
  align::WriteAccuracyCsv(csv, report);
  auto table = align::RenderAccuracyTable(report);
  OpenOut(dir / "accuracy.txt") << table;
  std::cout << table;
  return 0;
}

std::vector<AuthorEntity> StagedAuthors(const Options& o, const Config& c, const pipeline::Staging& staging,
                                        const IriMinter& minter) {
  return pipeline::UnifyAuthors(staging, pipeline::ReadAcceptedLinks(LinksDir(o, c)), minter);
}

int CmdClassify(const Options& o) {
  auto c = LoadConfig(o);
  const IriMinter minter(c.namespace_base);
  auto staging = pipeline::ReadStaging(StagingDir(o, c));
  auto authors = StagedAuthors(o, c, staging, minter);
  pipeline::Classify(authors, pipeline::LoadRegionTable(c));
  auto out = OpenOut(OrDefault(o.out, c.work_dir / "roles.csv"));
  pipeline::WriteRoles(out, authors);
  std::size_t transnational = 0;
  for (const auto& a : authors) transnational += a.roles.count(std::string(kTransnationalRole));
  std::cout << fmt::format("authors: {}\ntransnational: {}\n", authors.size(), transnational);
  return 0;
}

int CmdBuild(const Options& o) {
  graphbuild::BuiltGraph graph;
  Config c;
  if (!o.fixtures.empty()) {
    // Fixture builds always replay so they never touch the network.
    c = Config::Load(fs::path(o.fixtures) / "litgraph.json");
    if (o.threshold) c.threshold = *o.threshold;
    c.Validate();
    graph = pipeline::RunAll(c, true).graph;
  } else {
    c = LoadConfig(o);
    const IriMinter minter(c.namespace_base);
    const auto regions = pipeline::LoadRegionTable(c);
    auto staging = pipeline::ReadStaging(StagingDir(o, c));
    auto authors = StagedAuthors(o, c, staging, minter);
    auto roles_path = OrDefault(o.roles, c.work_dir / "roles.csv");
    if (fs::exists(roles_path)) {
      auto in = OpenIn(roles_path);
      auto roles = pipeline::ReadRoles(in);
      for (auto& a : authors) {
        auto it = roles.find(a.external_ids.at(Source::kWikidata));
        if (it == roles.end()) {
          throw Error(ErrorCode::kValidation, fmt::format("{} has no entry in {}", a.name, roles_path.string()));
        }
        a.roles = it->second;
      }
    } else {
      pipeline::Classify(authors, regions);
    }
    auto input = pipeline::AssembleBuildInput(staging, std::move(authors), minter);
    graph = graphbuild::Build(input, minter, regions);
  }
  auto out = OrDefault(o.out, c.work_dir / "graph.nt");
  WriteBuildOutputs(graph, out, !o.no_derived, FormatFor(o.format, out), c.namespace_base);
  graphbuild::WriteReportText(std::cout, graph.report);
  return 0;
}

int CmdStats(const Options& o) {
  auto c = LoadConfig(o);
  auto store = rdf::LoadStore(StorePath(o, c));
  auto report = stats::ComputeStats(*store, IriMinter(c.namespace_base));
  std::string format = o.format.empty() ? "text" : o.format;
  std::ostringstream body;
  if (format == "csv") {
    stats::WriteStatsCsv(body, report);
  } else if (format == "json") {
    body << stats::StatsToJson(report) << '\n';
  } else if (format == "text") {
    body << stats::RenderStatsText(report);
  } else {
    throw Error(ErrorCode::kConfig, fmt::format("unknown stats format '{}'", format));
  }
  if (o.out.empty()) {
    std::cout << body.str();
  } else {
    OpenOut(o.out) << body.str();
  }
  return 0;
}

int CmdExport(const Options& o) {
  auto c = LoadConfig(o);
  if (o.out.empty()) throw Error(ErrorCode::kConfig, "export needs --out");
  auto store = rdf::LoadStore(StorePath(o, c));
  rdf::ExportFile(*store, o.out, {FormatFor(o.format, o.out), !o.no_derived, c.namespace_base});
  return 0;
}

int CmdServe(const Options& o) {
  auto c = LoadConfig(o);
  if (o.port) c.service.port = *o.port;
  if (!o.bind.empty()) c.service.bind_address = o.bind;
  if (!o.static_dir.empty()) c.service.static_dir = o.static_dir;
  c.Validate();
  auto store = std::shared_ptr<const store::GraphStore>(rdf::LoadStore(StorePath(o, c)));
  auto handle = std::make_shared<store::StoreHandle>(store);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Server server(c.service, handle);
  int port = server.Bind();
  std::cout << fmt::format("serving {} triples on http://{}:{}/\n", store->size(), c.service.bind_address, port)
            << std::flush;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  server.Run();
  // Run can also end on its own (e.g. socket failure); wake the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int CmdSparql(const Options& o) {
  auto c = LoadConfig(o);
  auto client = pipeline::MakeClient(c, o.offline);
  auto result = connectors::SparqlSelect(*client, o.endpoint, Slurp(o.query_file));
  std::ostringstream body;
  csv::WriteRow(body, result.variables);
  for (const auto& row : result.rows) {
    csv::Row cells;
    for (const auto& v : result.variables) {
      auto it = row.find(v);
      cells.push_back(it == row.end() ? std::string() : it->second);
    }
    csv::WriteRow(body, cells);
  }
  if (o.out.empty()) {
    std::cout << body.str();
  } else {
    OpenOut(o.out) << body.str();
  }
  spdlog::info("{} rows", result.rows.size());
  return 0;
}

int CmdCachePut(const Options& o) {
  connectors::ResponseCache cache(o.cache_dir);
  auto body = Slurp(o.body_file);
  auto entry = cache.Put(o.cache_endpoint, o.cache_query, o.status, body, 0);
  std::cout << entry.request_key << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("litgraph"));
  spdlog::set_pattern("%^%l%$: %v");
  spdlog::set_level(spdlog::level::warn);

  Options o;
  CLI::App app{"litgraph: build and browse a world-literature knowledge graph"};
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "Pipeline config file (default ./litgraph.json)");
  app.add_flag("--offline", o.offline, "Force replay mode: serve connector requests from the cache only");
  app.add_flag("-v,--verbose", o.verbose, "Log progress");

  auto* ingest = app.add_subcommand("ingest", "Parse and validate dumps into staging files");
  ingest->add_option("--out", o.out, "Staging directory");

  auto* align_cmd = app.add_subcommand("align", "Align Wikidata authors with Open Library and Goodreads");
  align_cmd->add_option("--threshold", o.threshold, "Similarity threshold in [0,1]");
  align_cmd->add_option("--staging", o.staging_dir, "Staging directory");
  align_cmd->add_option("--out", o.out, "Links directory");

  auto* qa = app.add_subcommand("qa", "Link quality assessment");
  qa->require_subcommand(1);
  auto* qa_sample = qa->add_subcommand("sample", "Sample below-threshold pairs per similarity bucket");
  qa_sample->add_option("--seed", o.seed, "Sampling seed");
  qa_sample->add_option("--per-bucket", o.per_bucket, "Pairs per bucket");
  qa_sample->add_option("--candidates", o.candidates, "Scored candidates CSV");
  qa_sample->add_option("--links", o.links_dir, "Links directory");
  qa_sample->add_option("--out", o.out, "Worksheet CSV");
  auto* qa_score = qa->add_subcommand("score", "Score an annotated worksheet");
  qa_score->add_option("--worksheet", o.worksheet, "Annotated worksheet CSV");
  qa_score->add_option("--out", o.out, "Report directory");

  auto* classify_cmd = app.add_subcommand("classify", "Assign the Transnational role");
  classify_cmd->add_option("--staging", o.staging_dir, "Staging directory");
  classify_cmd->add_option("--links", o.links_dir, "Links directory");
  classify_cmd->add_option("--out", o.out, "Roles CSV");

  auto* build = app.add_subcommand("build", "Build the triple graph");
  build->add_option("--fixtures", o.fixtures, "Run the whole pipeline on a fixture directory (replay only)");
  build->add_option("--staging", o.staging_dir, "Staging directory");
  build->add_option("--links", o.links_dir, "Links directory");
  build->add_option("--roles", o.roles, "Roles CSV");
  build->add_option("--threshold", o.threshold, "Similarity threshold for --fixtures runs");
  build->add_option("--out", o.out, "Graph file (.nt or .ttl)");
  build->add_option("--format", o.format, "nt or ttl");
  build->add_flag("--no-derived", o.no_derived, "Leave out property-chain shortcuts");

  auto* stats_cmd = app.add_subcommand("stats", "Identifier, works and reception statistics");
  stats_cmd->add_option("--store", o.store, "Graph file");
  stats_cmd->add_option("--format", o.format, "text, csv or json");
  stats_cmd->add_option("--out", o.out, "Output file (default stdout)");

  auto* export_cmd = app.add_subcommand("export", "Re-serialize a graph file");
  export_cmd->add_option("--store", o.store, "Graph file");
  export_cmd->add_option("--out", o.out, "Output file")->required();
  export_cmd->add_option("--format", o.format, "nt or ttl");
  export_cmd->add_flag("--no-derived", o.no_derived, "Leave out property-chain shortcuts");

  auto* serve = app.add_subcommand("serve", "Serve the read-only JSON API");
  serve->add_option("--store", o.store, "Graph file");
  serve->add_option("--port", o.port, "Port (0 picks a free one)");
  serve->add_option("--bind", o.bind, "Bind address");
  serve->add_option("--static", o.static_dir, "Directory served under /");

  auto* sparql = app.add_subcommand("sparql", "Run a SELECT query through the connector cache");
  sparql->add_option("--query", o.query_file, "File holding the query")->required();
  sparql->add_option("--endpoint", o.endpoint, "SPARQL endpoint");
  sparql->add_option("--out", o.out, "CSV output (default stdout)");

  auto* cache = app.add_subcommand("cache", "Manage the connector response cache");
  cache->require_subcommand(1);
  auto* cache_put = cache->add_subcommand("put", "Record a response by hand");
  cache_put->add_option("--cache", o.cache_dir, "Cache directory")->required();
  cache_put->add_option("--endpoint", o.cache_endpoint, "Endpoint URL")->required();
  cache_put->add_option("--query", o.cache_query, "Logical query")->required();
  cache_put->add_option("--body-file", o.body_file, "Response body")->required();
  cache_put->add_option("--status", o.status, "HTTP status");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (o.verbose) spdlog::set_level(spdlog::level::info);

  try {
    if (*ingest) return CmdIngest(o);
    if (*align_cmd) return CmdAlign(o);
    if (*qa_sample) return CmdQaSample(o);
    if (*qa_score) return CmdQaScore(o);
    if (*classify_cmd) return CmdClassify(o);
    if (*build) return CmdBuild(o);
    if (*stats_cmd) return CmdStats(o);
    if (*export_cmd) return CmdExport(o);
    if (*serve) return CmdServe(o);
    if (*sparql) return CmdSparql(o);
    if (*cache_put) return CmdCachePut(o);
  } catch (const Error& e) {
    spdlog::error("{}: {}", ErrorCodeName(e.code()), e.what());
    return ExitCodeFor(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    spdlog::error("io: {}", e.what());
    return 3;
  }
  return 2;
}
