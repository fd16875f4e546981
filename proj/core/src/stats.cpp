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

#include "litgraph/stats.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "litgraph/vocabulary.hpp"

namespace litgraph::stats {

namespace {

std::optional<double> Percent(double numerator, double denominator) {
  if (denominator <= 0) return std::nullopt;
  return 100.0 * numerator / denominator;
}

std::optional<double> Mean(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::optional<double> Rounded(const std::optional<double>& v, int digits) {
  if (!v) return std::nullopt;
  double scale = std::pow(10.0, digits);
  return std::round(*v * scale) / scale;
}

nlohmann::ordered_json OrNull(const std::optional<double>& v, int digits) {
  auto r = Rounded(v, digits);
  return r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr);
}

struct WorkFacts {
  Source source;
  Term author;
  std::optional<double> rating;
  long long ratings = 0;
  long long readers = 0;
};

}  // namespace

StatsReport ComputeStats(const store::GraphStore& graph, const IriMinter& minter) {
  const Term type = V("type");
  const Term transnational =
      Term::FromIri(minter.MintKeyed(EntityKind::kRole, kTransnationalRole));

  StatsReport report;
  std::set<Term> authors, transnational_authors;
  for (const auto& t : graph.Match(std::nullopt, type, V("Person"))) authors.insert(t.subject);
  for (const auto& a : authors) {
    if (graph.Contains(Triple{a, V("dul:hasRole"), transnational})) transnational_authors.insert(a);
  }
  report.authors = authors.size();
  report.transnational_authors = transnational_authors.size();

  auto has = [&](const Term& author, std::string_view property) {
    return !graph.Match(author, V(property), std::nullopt).empty();
  };
  std::size_t viaf = 0, ol = 0, gr = 0, either = 0;
  for (const auto& a : authors) {
    bool has_ol = has(a, "urw:openLibraryId"), has_gr = has(a, "urw:goodreadsId");
    viaf += has(a, "urw:viafId");
    ol += has_ol;
    gr += has_gr;
    either += has_ol || has_gr;
  }
  const double n_authors = static_cast<double>(authors.size());
  report.identifiers = {
      {"viaf", viaf, Percent(viaf, n_authors)},
      {"openlibrary", ol, Percent(ol, n_authors)},
      {"goodreads", gr, Percent(gr, n_authors)},
      {"openlibrary_or_goodreads", either, Percent(either, n_authors)},
  };

  std::vector<WorkFacts> works;
  for (const auto& t : graph.Match(std::nullopt, type, V("frbr:Expression"))) {
    if (!t.subject.is_iri()) continue;
    auto parts = minter.Parse(Iri(t.subject.value()));
    if (!parts) continue;
    auto attributed = graph.Match(t.subject, V("prov:wasAttributedTo"), std::nullopt);
    if (attributed.empty()) continue;
    WorkFacts w{parts->source, attributed.front().object, std::nullopt, 0, 0};
    for (const auto& r : graph.Match(t.subject, V("urb:rated"), std::nullopt)) w.rating = r.object.AsDouble();
    for (const auto& r : graph.Match(t.subject, V("urb:numberOfRatings"), std::nullopt)) w.ratings += r.object.AsInteger();
    for (const auto& r : graph.Match(t.subject, V("urb:numberOfReaders"), std::nullopt)) w.readers += r.object.AsInteger();
    works.push_back(std::move(w));
  }

  auto transnational_share = [&](const std::set<Term>& group) {
    std::size_t n = 0;
    for (const auto& a : group) n += transnational_authors.count(a);
    return Percent(static_cast<double>(n), static_cast<double>(group.size()));
  };

  std::set<Term> all_with_work;
  std::size_t total_works = 0;
  for (Source source : kWorkSources) {
    std::set<Term> with_work;
    std::size_t count = 0;
    for (const auto& w : works) {
      if (w.source != source) continue;
      ++count;
      with_work.insert(w.author);
    }
    all_with_work.insert(with_work.begin(), with_work.end());
    total_works += count;
    report.works.push_back({std::string(SourceName(source)), with_work.size(),
                            transnational_share(with_work), count});
  }
  report.works.push_back({"total", all_with_work.size(), transnational_share(all_with_work), total_works});

  for (Source source : {Source::kOpenLibrary, Source::kGoodreads}) {
    ReceptionRow row;
    row.source = std::string(SourceName(source));
    std::vector<double> ratings_all, ratings_tn;
    long long ratings_tn_sum = 0, readers_tn_sum = 0;
    for (const auto& w : works) {
      if (w.source != source) continue;
      bool tn = transnational_authors.count(w.author) > 0;
      if (w.rating) {
        ++row.rated_works;
        ratings_all.push_back(*w.rating);
        if (tn) ratings_tn.push_back(*w.rating);
      }
      row.ratings += w.ratings;
      row.readers += w.readers;
      if (tn) {
        ratings_tn_sum += w.ratings;
        readers_tn_sum += w.readers;
      }
    }
    row.average_rating = Mean(ratings_all);
    row.average_rating_transnational = Mean(ratings_tn);
    row.ratings_transnational_percent = Percent(static_cast<double>(ratings_tn_sum), static_cast<double>(row.ratings));
    row.readers_transnational_percent = Percent(static_cast<double>(readers_tn_sum), static_cast<double>(row.readers));
    report.reception.push_back(std::move(row));
  }
  return report;
}

std::string FormatPercent(const std::optional<double>& value) {
  return value ? fmt::format("{:.1f}", *value) : std::string("n/a");
}

std::string FormatRating(const std::optional<double>& value) {
  return value ? fmt::format("{:.2f}", *value) : std::string("n/a");
}

void WriteStatsCsv(std::ostream& out, const StatsReport& r) {
  out << "table,row,metric,value,transnational\n";
  auto row = [&](std::string_view table, std::string_view name, std::string_view metric,
                 const std::string& value, const std::string& tn) {
    out << table << ',' << name << ',' << metric << ',' << value << ',' << tn << '\n';
  };
  row("summary", "all", "authors", std::to_string(r.authors), "");
  row("summary", "all", "transnational_authors", std::to_string(r.transnational_authors), "");
  for (const auto& i : r.identifiers) {
    row("identifiers", i.identifier, "authors", std::to_string(i.authors), "");
    row("identifiers", i.identifier, "percent", FormatPercent(i.percent), "");
  }
  for (const auto& w : r.works) {
    row("works", w.source, "authors_with_work", std::to_string(w.authors_with_work),
        FormatPercent(w.transnational_percent));
    row("works", w.source, "works", std::to_string(w.works), "");
  }
  for (const auto& x : r.reception) {
    row("reception", x.source, "average_rating", FormatRating(x.average_rating),
        FormatRating(x.average_rating_transnational));
    row("reception", x.source, "rated_works", std::to_string(x.rated_works), "");
    row("reception", x.source, "ratings", std::to_string(x.ratings),
        FormatPercent(x.ratings_transnational_percent));
    row("reception", x.source, "readers", std::to_string(x.readers),
        FormatPercent(x.readers_transnational_percent));
  }
}

std::string RenderStatsText(const StatsReport& r) {
  std::ostringstream out;
  out << fmt::format("Authors: {} ({} Transnational)\n\n", r.authors, r.transnational_authors);
  out << fmt::format("{:<26}{:>16}\n", "Identifier", "Authors (%)");
  for (const auto& i : r.identifiers) {
    out << fmt::format("{:<26}{:>16}\n", i.identifier, fmt::format("{} ({}%)", i.authors, FormatPercent(i.percent)));
  }
  out << '\n' << fmt::format("{:<14}{:>30}{:>12}\n", "Source", "Writers with >=1 work (% TN)", "Works");
  for (const auto& w : r.works) {
    out << fmt::format("{:<14}{:>30}{:>12}\n", w.source,
                       fmt::format("{} ({}%)", w.authors_with_work, FormatPercent(w.transnational_percent)),
                       w.works);
  }
  out << '\n' << fmt::format("{:<14}{:>20}{:>22}{:>22}\n", "Source", "Avg rating (TN)", "Ratings (% TN)", "Readers (% TN)");
  for (const auto& x : r.reception) {
    out << fmt::format("{:<14}{:>20}{:>22}{:>22}\n", x.source,
                       fmt::format("{} ({})", FormatRating(x.average_rating), FormatRating(x.average_rating_transnational)),
                       fmt::format("{} ({}%)", x.ratings, FormatPercent(x.ratings_transnational_percent)),
                       fmt::format("{} ({}%)", x.readers, FormatPercent(x.readers_transnational_percent)));
  }
  return out.str();
}

std::string StatsToJson(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["authors"] = r.authors;
  j["transnational_authors"] = r.transnational_authors;
  auto& ids = j["identifiers"] = nlohmann::ordered_json::array();
  for (const auto& i : r.identifiers) {
    ids.push_back({{"identifier", i.identifier}, {"authors", i.authors}, {"percent", OrNull(i.percent, 1)}});
  }
  auto& works = j["works"] = nlohmann::ordered_json::array();
  for (const auto& w : r.works) {
    works.push_back({{"source", w.source},
                     {"authors_with_work", w.authors_with_work},
                     {"transnational_percent", OrNull(w.transnational_percent, 1)},
                     {"works", w.works}});
  }
  auto& reception = j["reception"] = nlohmann::ordered_json::array();
  for (const auto& x : r.reception) {
    reception.push_back({{"source", x.source},
                         {"rated_works", x.rated_works},
                         {"average_rating", OrNull(x.average_rating, 2)},
                         {"average_rating_transnational", OrNull(x.average_rating_transnational, 2)},
                         {"ratings", x.ratings},
                         {"ratings_transnational_percent", OrNull(x.ratings_transnational_percent, 1)},
                         {"readers", x.readers},
                         {"readers_transnational_percent", OrNull(x.readers_transnational_percent, 1)}});
  }
  return j.dump();
}

}  // namespace litgraph::stats
