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

#include "litgraph/qa.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "litgraph/csv.hpp"
#include "litgraph/error.hpp"

namespace litgraph::align {

double BucketLower(int bucket) { return bucket / 10.0; }
double BucketUpper(int bucket) { return (bucket + 1) / 10.0; }

std::optional<int> BucketOf(double similarity) {
  for (int k = kBucketCount - 1; k >= 0; --k) {
    if (similarity >= BucketLower(k)) {
      if (similarity < BucketUpper(k)) return k;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string BucketLabel(int bucket) {
  return fmt::format("[{:.1f},{:.1f})", BucketLower(bucket), BucketUpper(bucket));
}

namespace {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::optional<int> ParseBucketLabel(const std::string& label) {
  for (int k = 0; k < kBucketCount; ++k) {
    if (BucketLabel(k) == label) return k;
  }
  return std::nullopt;
}

std::string_view AnnotationName(Annotation annotation) {
  switch (annotation) {
    case Annotation::kCorrect: return "correct";
    case Annotation::kIncorrect: return "incorrect";
    case Annotation::kUnannotated: return "";
  }
  return "";
}

Annotation ParseAnnotation(std::string text, std::size_t row) {
  for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (text.empty()) return Annotation::kUnannotated;
  if (text == "correct" || text == "yes" || text == "y" || text == "1") return Annotation::kCorrect;
  if (text == "incorrect" || text == "no" || text == "n" || text == "0") return Annotation::kIncorrect;
  throw Error(ErrorCode::kParse, fmt::format("worksheet row {}: unknown annotation '{}'", row, text));
}

const csv::Row kWorksheetHeader = {"bucket",     "seed",     "left_source", "left_id",
                                   "left_name",  "right_source", "right_id", "right_name",
                                   "similarity", "heuristic", "annotation"};

}  // namespace

std::uint64_t UniformBelow(std::uint64_t bound, std::uint64_t& state) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "UniformBelow(0)");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = SplitMix64(state);
    if (r >= threshold) return r % bound;
  }
}

std::vector<QaSample> SampleForQa(const std::vector<AlignmentCandidate>& candidates,
                                  std::uint64_t seed, std::size_t per_bucket) {
  std::vector<std::vector<AlignmentCandidate>> members(kBucketCount);
  for (const auto& c : candidates) {
    if (auto bucket = BucketOf(c.similarity)) members[*bucket].push_back(c);
  }
  std::uint64_t state = seed;
  std::vector<QaSample> samples;
  for (int k = 0; k < kBucketCount; ++k) {
    auto& pool = members[k];
    std::sort(pool.begin(), pool.end(), CandidateLess);
    const std::size_t take = std::min(per_bucket, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      auto j = i + static_cast<std::size_t>(UniformBelow(pool.size() - i, state));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end(), CandidateLess);
    QaSample sample{k, seed, {}};
    for (auto& c : pool) sample.pairs.push_back({std::move(c), Annotation::kUnannotated});
    samples.push_back(std::move(sample));
  }
  return samples;
}

void WriteWorksheet(std::ostream& out, const std::vector<QaSample>& samples) {
  csv::WriteRow(out, kWorksheetHeader);
  for (const auto& sample : samples) {
    for (const auto& pair : sample.pairs) {
      const auto& c = pair.candidate;
      csv::WriteRow(out, {BucketLabel(sample.bucket), std::to_string(sample.seed),
                          std::string(SourceName(c.left.source)), c.left.source_id, c.left.name,
                          std::string(SourceName(c.right.source)), c.right.source_id, c.right.name,
                          FormatSimilarity(c.similarity), std::string(HeuristicName(c.heuristic)),
                          std::string(AnnotationName(pair.annotation))});
    }
  }
}

std::vector<QaSample> ReadWorksheet(std::istream& in) {
  auto rows = csv::ReadAll(in);
  std::vector<QaSample> samples;
  for (int k = 0; k < kBucketCount; ++k) samples.push_back({k, 0, {}});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && row == kWorksheetHeader) continue;
    if (row.size() != kWorksheetHeader.size()) {
      throw Error(ErrorCode::kParse, fmt::format("worksheet row {}: expected {} fields", i + 1,
                                                 kWorksheetHeader.size()));
    }
    auto bucket = ParseBucketLabel(row[0]);
    if (!bucket) throw Error(ErrorCode::kParse, fmt::format("worksheet row {}: bad bucket '{}'", i + 1, row[0]));
    QaPair pair;
    auto& c = pair.candidate;
    auto left = ParseSource(row[2]);
    auto right = ParseSource(row[5]);
    auto heuristic = ParseHeuristic(row[9]);
    double similarity = 0;
    auto [ptr, ec] = std::from_chars(row[8].data(), row[8].data() + row[8].size(), similarity);
    if (!left || !right || !heuristic || ec != std::errc() || ptr != row[8].data() + row[8].size()) {
      throw Error(ErrorCode::kParse, fmt::format("worksheet row {}: malformed fields", i + 1));
    }
    c.left = EntityRef{*left, row[3], row[4]};
    c.right = EntityRef{*right, row[6], row[7]};
    c.similarity = similarity;
    c.heuristic = *heuristic;
    if (BucketOf(similarity) != bucket) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("worksheet row {}: similarity {} outside bucket {}", i + 1, row[8], row[0]));
    }
    pair.annotation = ParseAnnotation(row[10], i + 1);
    auto& sample = samples[*bucket];
    sample.seed = std::stoull(row[1]);
    sample.pairs.push_back(std::move(pair));
  }
  return samples;
}

std::vector<BucketAccuracy> ScoreQa(const std::vector<QaSample>& samples) {
  std::vector<std::string> offenders;
  std::map<int, BucketAccuracy> by_bucket;
  for (int k = 0; k < kBucketCount; ++k) by_bucket[k] = BucketAccuracy{k, 0, 0, std::nullopt};
  for (const auto& sample : samples) {
    auto& acc = by_bucket[sample.bucket];
    acc.bucket = sample.bucket;
    for (const auto& pair : sample.pairs) {
      if (pair.annotation == Annotation::kUnannotated) {
        offenders.push_back(fmt::format("{} {}:{} -> {}:{}", BucketLabel(sample.bucket),
                                        SourceName(pair.candidate.left.source),
                                        pair.candidate.left.source_id,
                                        SourceName(pair.candidate.right.source),
                                        pair.candidate.right.source_id));
        continue;
      }
      ++acc.total;
      if (pair.annotation == Annotation::kCorrect) ++acc.correct;
    }
  }
  if (!offenders.empty()) {
    throw Error(ErrorCode::kValidation,
                fmt::format("{} unannotated pair(s): {}", offenders.size(), fmt::join(offenders, "; ")));
  }
  std::vector<BucketAccuracy> report;
  for (auto& [k, acc] : by_bucket) {
    if (acc.total > 0) acc.accuracy = static_cast<double>(acc.correct) / static_cast<double>(acc.total);
    report.push_back(acc);
  }
  return report;
}

void WriteAccuracyCsv(std::ostream& out, const std::vector<BucketAccuracy>& report) {
  csv::WriteRow(out, {"bucket", "total", "correct", "accuracy"});
  for (const auto& row : report) {
    csv::WriteRow(out, {BucketLabel(row.bucket), std::to_string(row.total), std::to_string(row.correct),
                        row.accuracy ? FormatSimilarity(*row.accuracy) : "n/a"});
  }
}

std::string RenderAccuracyTable(const std::vector<BucketAccuracy>& report) {
  std::ostringstream out;
  out << fmt::format("{:<12} {:>6} {:>8} {:>9}\n", "similarity", "pairs", "correct", "accuracy");
  for (const auto& row : report) {
    out << fmt::format("{:<12} {:>6} {:>8} {:>9}\n", BucketLabel(row.bucket), row.total, row.correct,
                       row.accuracy ? fmt::format("{:.1f}%", *row.accuracy * 100.0) : "n/a");
  }
  return out.str();
}

}  // namespace litgraph::align
