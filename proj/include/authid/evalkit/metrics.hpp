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

#include <span>
#include <string>

namespace authid::evalkit {

struct ScoredPair {
  std::string id;
  double score = 0.5;
  int truth = 0;  // 1 = same author
};

// Fraction of pairs where (score > threshold) equals truth. A score equal to
// the threshold predicts "different". Throws ConfigError on empty input.
double verification_accuracy(std::span<const ScoredPair> pairs, double threshold = 0.5);

// Rank-based ROC area with tied scores counted as one half. Throws
// ConfigError unless both classes are present.
double auc(std::span<const ScoredPair> pairs);

// Scores of exactly 0.5 are unanswered; above is "same", below "different".
double f1_answered(std::span<const ScoredPair> pairs);
double c_at_1(std::span<const ScoredPair> pairs);
// Unanswered cases count as false negatives.
double f05u(std::span<const ScoredPair> pairs);

struct PanMetrics {
  double auc = 0;
  double f1 = 0;
  double c_at_1 = 0;
  double f05u = 0;

  double overall() const noexcept { return (auc + f1 + c_at_1 + f05u) / 4.0; }
  friend bool operator==(const PanMetrics&, const PanMetrics&) = default;
};

PanMetrics pan_metrics(std::span<const ScoredPair> pairs);

}  // namespace authid::evalkit
