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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "litgraph/align.hpp"
#include "litgraph/classify.hpp"
#include "litgraph/config.hpp"
#include "litgraph/connectors.hpp"
#include "litgraph/graphbuild.hpp"
#include "litgraph/ingest.hpp"

namespace litgraph::pipeline {

// Staged dumps after parsing, name normalization and author selection.
struct Staging {
  std::vector<ingest::SourceAuthorRecord> wikidata_authors;  // selected only
  std::map<Source, std::vector<ingest::SourceAuthorRecord>> platform_authors;
  std::map<Source, std::vector<ingest::SourceWorkRecord>> works;
  ingest::ViafIsbnList viaf;
  std::map<ingest::RejectionReason, std::size_t> rejected;
  std::map<Source, std::vector<ingest::RecordError>> errors;
};

Staging RunIngest(const Config& config);
void WriteStaging(const Staging& staging, const std::filesystem::path& dir);
Staging ReadStaging(const std::filesystem::path& dir);
void WriteIngestReport(std::ostream& out, const Staging& staging);

std::unique_ptr<connectors::Client> MakeClient(const Config& config, bool offline);

struct AlignOutput {
  std::vector<align::AlignmentCandidate> candidates;  // scored and thresholded
  align::ResolvedLinks links;
  std::vector<std::string> warnings;
};

std::vector<align::KgAuthor> KgAuthors(const Staging& staging);
align::NameDirectory PlatformNames(const Staging& staging);

AlignOutput RunAlign(const Config& config, const Staging& staging, connectors::Client& client,
                     double threshold);
void WriteAlignOutput(const AlignOutput& output, const std::filesystem::path& dir);
std::vector<align::AlignmentCandidate> ReadAcceptedLinks(const std::filesystem::path& dir);

// Unified authors: the selected Wikidata records with accepted platform ids
// merged into external_ids.
std::vector<AuthorEntity> UnifyAuthors(const Staging& staging,
                                       const std::vector<align::AlignmentCandidate>& accepted,
                                       const IriMinter& minter);

void Classify(std::vector<AuthorEntity>& authors, const classify::RegionTable& table);

// roles.csv: wikidata_id,name,birth_country,birth_year,citizenships,ethnic_group,roles
void WriteRoles(std::ostream& out, const std::vector<AuthorEntity>& authors);
std::map<std::string, std::set<std::string>> ReadRoles(std::istream& in);

graphbuild::BuildInput AssembleBuildInput(const Staging& staging,
                                          std::vector<AuthorEntity> authors,
                                          const IriMinter& minter);

classify::RegionTable LoadRegionTable(const Config& config);

struct PipelineResult {
  Staging staging;
  AlignOutput alignment;
  std::vector<AuthorEntity> authors;
  graphbuild::BuiltGraph graph;
};

// ingest -> align -> classify -> build, all in memory.
PipelineResult RunAll(const Config& config, bool offline);

}  // namespace litgraph::pipeline
