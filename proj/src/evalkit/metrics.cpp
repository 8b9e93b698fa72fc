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

#include "authid/evalkit/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "authid/common/error.hpp"

namespace authid::evalkit {

namespace {

void require_nonempty(std::span<const ScoredPair> pairs, const char* what) {
  if (pairs.empty()) throw ConfigError(std::string(what) + " of an empty score list");
}

struct Counts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0, unanswered = 0;
};

Counts count(std::span<const ScoredPair> pairs) {
  Counts c;
  for (const auto& p : pairs) {
    if (p.score == 0.5) {
      ++c.unanswered;
    } else if (p.score > 0.5) {
      ++(p.truth == 1 ? c.tp : c.fp);
    } else {
      ++(p.truth == 1 ? c.fn : c.tn);
    }
  }
  return c;
}

}  // namespace

double verification_accuracy(std::span<const ScoredPair> pairs, double threshold) {
  require_nonempty(pairs, "accuracy");
  std::size_t correct = 0;
  for (const auto& p : pairs) {
    if ((p.score > threshold) == (p.truth == 1)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

double auc(std::span<const ScoredPair> pairs) {
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a].score < pairs[b].score; });
  // Sum of average ranks of the positives (Mann-Whitney U).
  double pos_rank_sum = 0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && pairs[order[j]].score == pairs[order[i]].score) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pairs[order[k]].truth == 1) {
        pos_rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = pairs.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ConfigError("auc needs at least one positive and one negative");
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1) / 2.0) / (np * nn);
}

double f1_answered(std::span<const ScoredPair> pairs) {
  require_nonempty(pairs, "f1");
  const Counts c = count(pairs);
  if (c.tp == 0) return 0.0;
  const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  return 2 * precision * recall / (precision + recall);
}

double c_at_1(std::span<const ScoredPair> pairs) {
  require_nonempty(pairs, "c@1");
  const Counts c = count(pairs);
  const double n = static_cast<double>(pairs.size());
  const double nc = static_cast<double>(c.tp + c.tn);
  const double nu = static_cast<double>(c.unanswered);
  return (nc + nu * nc / n) / n;
}

double f05u(std::span<const ScoredPair> pairs) {
  require_nonempty(pairs, "f0.5u");
  const Counts c = count(pairs);
  const double tp = static_cast<double>(c.tp);
  const double denom = 1.25 * tp + 0.25 * static_cast<double>(c.fn + c.unanswered) + static_cast<double>(c.fp);
  return denom > 0 ? 1.25 * tp / denom : 0.0;
}

PanMetrics pan_metrics(std::span<const ScoredPair> pairs) {
  require_nonempty(pairs, "metrics");
  return {auc(pairs), f1_answered(pairs), c_at_1(pairs), f05u(pairs)};
}

}  // namespace authid::evalkit
