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

#include "authid/koppel/imposters.hpp"

#include <algorithm>
#include <cmath>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/simd/kernels.hpp"

namespace authid::koppel {

Metric parse_metric(const std::string& name) {
  if (name == "ruzicka") return Metric::kRuzicka;
  if (name == "cosine") return Metric::kCosine;
  throw ConfigError("unknown metric '" + name + "' (expected ruzicka or cosine)");
}

std::string_view metric_name(Metric m) noexcept { return m == Metric::kRuzicka ? "ruzicka" : "cosine"; }

void ImpostersConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(feature_fraction > 0 && feature_fraction <= 1)) throw ConfigError("feature_fraction must be in (0, 1]");
  if (!(decision_threshold >= 0 && decision_threshold <= 1)) throw ConfigError("decision_threshold must be in [0, 1]");
}

double ruzicka(const SparseCounts& x, const SparseCounts& y) {
  double lo = 0, hi = 0;
  auto a = x.entries.begin(), b = y.entries.begin();
  while (a != x.entries.end() || b != y.entries.end()) {
    if (b == y.entries.end() || (a != x.entries.end() && a->first < b->first)) {
      hi += a->second;
      ++a;
    } else if (a == x.entries.end() || b->first < a->first) {
      hi += b->second;
      ++b;
    } else {
      lo += std::min(a->second, b->second);
      hi += std::max(a->second, b->second);
      ++a;
      ++b;
    }
  }
  return hi > 0 ? lo / hi : 0.0;
}

double cosine(const SparseCounts& x, const SparseCounts& y) {
  double xy = 0, xx = 0, yy = 0;
  for (const auto& [i, v] : x.entries) xx += v * v;
  for (const auto& [i, v] : y.entries) yy += v * v;
  auto a = x.entries.begin(), b = y.entries.begin();
  while (a != x.entries.end() && b != y.entries.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      xy += a->second * b->second;
      ++a;
      ++b;
    }
  }
  if (!(xx > 0 && yy > 0)) return 0.0;
  return std::min(1.0, xy / std::sqrt(xx * yy));
}

namespace {

// Dense copies of the vectors over the union of their supports.
struct UnionView {
  std::vector<std::uint32_t> support;
  std::vector<double> query;
  std::vector<std::vector<double>> candidates;
};

UnionView make_union(const SparseCounts& query, const std::vector<SparseCounts>& candidates) {
  UnionView u;
  for (const auto& [i, v] : query.entries) u.support.push_back(i);
  for (const auto& c : candidates) {
    for (const auto& [i, v] : c.entries) u.support.push_back(i);
  }
  std::sort(u.support.begin(), u.support.end());
  u.support.erase(std::unique(u.support.begin(), u.support.end()), u.support.end());
  auto densify = [&](const SparseCounts& s) {
    std::vector<double> d(u.support.size(), 0.0);
    for (const auto& [i, v] : s.entries) {
      d[static_cast<std::size_t>(std::lower_bound(u.support.begin(), u.support.end(), i) - u.support.begin())] = v;
    }
    return d;
  };
  u.query = densify(query);
  for (const auto& c : candidates) u.candidates.push_back(densify(c));
  return u;
}

}  // namespace

ImpostersResult imposters_score(const SparseCounts& query, const std::vector<SparseCounts>& candidates,
                                std::size_t space_size, const ImpostersConfig& cfg) {
  cfg.validate();
  if (candidates.empty()) throw ConfigError("imposters_score needs at least one candidate");
  if (space_size == 0) throw ConfigError("empty feature space");
  auto check = [&](const SparseCounts& s) {
    if (!s.entries.empty() && s.entries.back().first >= space_size) {
      throw ConfigError("vector index outside the feature space");
    }
  };
  check(query);
  for (const auto& c : candidates) check(c);

  const UnionView u = make_union(query, candidates);
  const std::size_t n = u.support.size();
  const std::size_t k = std::min<std::size_t>(
      space_size, static_cast<std::size_t>(std::ceil(cfg.feature_fraction * static_cast<double>(space_size) - 1e-9)));
  const auto& K = simd::kernels<double>();

  ImpostersResult res;
  res.wins.assign(candidates.size(), 0);
  std::vector<double> mask(n);
  for (int round = 0; round < cfg.iterations; ++round) {
    // Selection sampling of k out of space_size, visiting the union support
    // first; only its intersection with the sample matters.
    Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(round)}));
    std::size_t chosen = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double need = static_cast<double>(k - chosen);
      const double left = static_cast<double>(space_size - j);
      const bool take = rng.uniform01() * left < need;
      mask[j] = take ? 1.0 : 0.0;
      chosen += take ? 1 : 0;
    }
    std::size_t best = 0;
    double best_sim = -1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double sim;
      if (cfg.metric == Metric::kRuzicka) {
        double mm[2];
        K.masked_minmax(u.query.data(), u.candidates[c].data(), mask.data(), n, mm);
        sim = mm[1] > 0 ? mm[0] / mm[1] : 0.0;
      } else {
        double d3[3];
        K.masked_dot3(u.query.data(), u.candidates[c].data(), mask.data(), n, d3);
        sim = (d3[1] > 0 && d3[2] > 0) ? d3[0] / std::sqrt(d3[1] * d3[2]) : 0.0;
      }
      if (sim > best_sim) {
        best_sim = sim;
        best = c;
      }
    }
    ++res.wins[best];
  }
  res.scores.resize(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    res.scores[c] = static_cast<double>(res.wins[c]) / static_cast<double>(cfg.iterations);
  }
  return res;
}

KoppelDecision koppel_decide(const SparseCounts& probe, const std::vector<SparseCounts>& candidates,
                             std::size_t space_size, const ImpostersConfig& cfg) {
  const auto res = imposters_score(probe, candidates, space_size, cfg);
  KoppelDecision d;
  for (std::size_t c = 1; c < res.wins.size(); ++c) {
    if (res.wins[c] > res.wins[d.index]) d.index = c;
  }
  d.score = res.scores[d.index];
  d.answered = d.score >= cfg.decision_threshold;
  return d;
}

std::size_t koppel_select(const corpus::NWayTask& task, const features::FeatureSpace& space,
                          const ImpostersConfig& cfg) {
  if (task.candidates.empty()) throw ConfigError("task has no candidates");
  const auto probe = features::vectorize(task.probe.text, space);
  std::vector<SparseCounts> cands;
  for (const auto& c : task.candidates) cands.push_back(features::vectorize(c.text, space));
  return koppel_decide(probe, cands, space.size(), cfg).index;
}

}  // namespace authid::koppel
