/*
 * Copyright 2026 The authid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "authid/corpus/corpus.hpp"
#include "authid/features/features.hpp"

namespace authid::koppel {

using features::SparseCounts;

enum class Metric { kRuzicka, kCosine };

Metric parse_metric(const std::string& name);
std::string_view metric_name(Metric m) noexcept;

struct ImpostersConfig {
  int iterations = 100;
  double feature_fraction = 0.5;
  Metric metric = Metric::kRuzicka;
  double decision_threshold = 0.0;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

// sum min(x, y) / sum max(x, y); 0 when both are empty.
double ruzicka(const SparseCounts& x, const SparseCounts& y);
// 0 when either is the zero vector.
double cosine(const SparseCounts& x, const SparseCounts& y);

struct ImpostersResult {
  std::vector<std::uint32_t> wins;
  // wins / iterations
  std::vector<double> scores;
};

// Each round draws ceil(fraction * space_size) distinct feature indices
// from [0, space_size) with a generator seeded from (seed, round), compares
// the query with every candidate on those features only and credits the
// most similar candidate (lowest index on ties).
ImpostersResult imposters_score(const SparseCounts& query, const std::vector<SparseCounts>& candidates,
                                std::size_t space_size, const ImpostersConfig& cfg);

struct KoppelDecision {
  std::size_t index = 0;
  double score = 0;
  // False when the best score is below the decision threshold.
  bool answered = true;
};

KoppelDecision koppel_decide(const SparseCounts& probe, const std::vector<SparseCounts>& candidates,
                             std::size_t space_size, const ImpostersConfig& cfg);

// Candidate with the highest imposters score for the task's probe.
std::size_t koppel_select(const corpus::NWayTask& task, const features::FeatureSpace& space,
                          const ImpostersConfig& cfg);

}  // namespace authid::koppel
