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

#include "authid/evalkit/protocol.hpp"

#include <algorithm>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"

namespace authid::evalkit {

double nway_eval(const Selector& selector, const std::vector<corpus::NWayTask>& tasks) {
  if (tasks.empty()) throw ConfigError("no N-way tasks to evaluate");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const std::size_t chosen = selector(t);
    if (chosen >= t.candidates.size()) {
      throw ConfigError("selector returned index " + std::to_string(chosen) + " for task " + std::to_string(i) +
                        " with " + std::to_string(t.candidates.size()) + " candidates");
    }
    if (chosen == t.positive_index) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(tasks.size());
}

std::uint64_t run_seed(std::uint64_t seed, int n, int run) noexcept {
  return derive_seed(seed, {0x9A55, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(run)});
}

namespace {

double mean_of(const std::vector<RunResult>& runs) {
  double s = 0;
  for (const auto& r : runs) s += r.accuracy;
  return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

}  // namespace

EvalReport run_protocol(const Selector& selector, const corpus::PiecesByAuthor& pool, const std::vector<int>& ns,
                        int n_sets, int runs, std::uint64_t seed) {
  if (ns.empty()) throw ConfigError("no N values given");
  if (runs < 1 || n_sets < 1) throw ConfigError("runs and n_sets must be >= 1");
  EvalReport report;
  report.protocol = "nway";
  report.seed = seed;
  report.config = {{"ns", ns}, {"n_sets", n_sets}, {"runs", runs}};
  for (int n : ns) {
    NResult nr;
    nr.n = n;
    for (int r = 0; r < runs; ++r) {
      const std::uint64_t s = run_seed(seed, n, r);
      const auto tasks = corpus::build_nway_tasks(pool, n, n_sets, s);
      nr.runs.push_back({r, s, tasks.size(), nway_eval(selector, tasks)});
    }
    nr.mean_accuracy = mean_of(nr.runs);
    report.nway.push_back(std::move(nr));
  }
  return report;
}

std::vector<NResult> evaluate_task_set(const Selector& selector, const corpus::TaskSet& tasks) {
  std::vector<NResult> out;
  for (const auto& run : tasks.runs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const NResult& r) { return r.n == run.n; });
    if (it == out.end()) {
      out.push_back({run.n, {}, 0});
      it = out.end() - 1;
    }
    it->runs.push_back({run.run, run.seed, run.tasks.size(), nway_eval(selector, run.tasks)});
  }
  for (auto& nr : out) nr.mean_accuracy = mean_of(nr.runs);
  return out;
}

VerificationResult evaluate_scores(std::span<const ScoredPair> pairs) {
  VerificationResult v;
  v.pairs = pairs.size();
  v.accuracy = verification_accuracy(pairs);
  v.metrics = pan_metrics(pairs);
  return v;
}

}  // namespace authid::evalkit
