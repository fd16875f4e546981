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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "litgraph/graph_store.hpp"
#include "litgraph/iri.hpp"
#include "litgraph/model.hpp"

namespace litgraph::stats {

struct IdentifierRow {
  std::string identifier;  // viaf, openlibrary, goodreads, openlibrary_or_goodreads
  std::size_t authors = 0;
  std::optional<double> percent;
};

struct WorksRow {
  std::string source;  // source name or "total"
  std::size_t authors_with_work = 0;
  std::optional<double> transnational_percent;
  std::size_t works = 0;
};

struct ReceptionRow {
  std::string source;
  std::size_t rated_works = 0;
  std::optional<double> average_rating;
  std::optional<double> average_rating_transnational;
  long long ratings = 0;
  std::optional<double> ratings_transnational_percent;
  long long readers = 0;
  std::optional<double> readers_transnational_percent;
};

struct StatsReport {
  std::size_t authors = 0;
  std::size_t transnational_authors = 0;
  std::vector<IdentifierRow> identifiers;
  std::vector<WorksRow> works;
  std::vector<ReceptionRow> reception;
};

StatsReport ComputeStats(const store::GraphStore& graph, const IriMinter& minter);

// Percentages render with one decimal, ratings with two; undefined values
// render as "n/a".
std::string FormatPercent(const std::optional<double>& value);
std::string FormatRating(const std::optional<double>& value);

// Columns: table,row,metric,value,transnational
void WriteStatsCsv(std::ostream& out, const StatsReport& report);
std::string RenderStatsText(const StatsReport& report);
std::string StatsToJson(const StatsReport& report);

}  // namespace litgraph::stats
