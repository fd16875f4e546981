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

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "litgraph/align.hpp"

namespace litgraph::align {

inline constexpr int kBucketCount = 7;

// Bucket k covers [k/10, (k+1)/10). Similarities at or above 0.7 (or
// negative) have no bucket.
std::optional<int> BucketOf(double similarity);
std::string BucketLabel(int bucket);  // "[0.6,0.7)"
double BucketLower(int bucket);
double BucketUpper(int bucket);

enum class Annotation { kUnannotated, kCorrect, kIncorrect };

struct QaPair {
  AlignmentCandidate candidate;
  Annotation annotation = Annotation::kUnannotated;
};

struct QaSample {
  int bucket = 0;
  std::uint64_t seed = 0;
  std::vector<QaPair> pairs;
};

// Uniform sample without replacement of up to per_bucket candidates from each
// bucket. Members are put into canonical order before sampling, so the result
// depends only on the candidate set and the seed.
std::vector<QaSample> SampleForQa(const std::vector<AlignmentCandidate>& candidates,
                                  std::uint64_t seed, std::size_t per_bucket = 100);

// Deterministic across platforms (std::uniform_int_distribution is not).
std::uint64_t UniformBelow(std::uint64_t bound, std::uint64_t& state);

// Worksheet CSV: bucket,seed,left_source,left_id,left_name,right_source,
// right_id,right_name,similarity,heuristic,annotation
void WriteWorksheet(std::ostream& out, const std::vector<QaSample>& samples);
std::vector<QaSample> ReadWorksheet(std::istream& in);

struct BucketAccuracy {
  int bucket = 0;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::optional<double> accuracy;  // nullopt for an empty bucket
};

// Every sampled pair must be annotated; otherwise throws Error{kValidation}
// listing the offending pairs.
std::vector<BucketAccuracy> ScoreQa(const std::vector<QaSample>& samples);

void WriteAccuracyCsv(std::ostream& out, const std::vector<BucketAccuracy>& report);
std::string RenderAccuracyTable(const std::vector<BucketAccuracy>& report);

}  // namespace litgraph::align
