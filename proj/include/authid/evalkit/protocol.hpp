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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "authid/corpus/corpus.hpp"
#include "authid/corpus/io.hpp"
#include "authid/evalkit/metrics.hpp"

namespace authid::evalkit {

using Selector = std::function<std::size_t(const corpus::NWayTask&)>;

// Fraction of tasks where the selector returns positive_index. Throws
// ConfigError on an empty list and when the selector returns an index
// outside the candidate list.
double nway_eval(const Selector& selector, const std::vector<corpus::NWayTask>& tasks);

struct RunResult {
  int run = 0;
  std::uint64_t seed = 0;
  std::size_t tasks = 0;
  double accuracy = 0;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct NResult {
  int n = 0;
  std::vector<RunResult> runs;
  double mean_accuracy = 0;
  friend bool operator==(const NResult&, const NResult&) = default;
};

struct VerificationResult {
  std::size_t pairs = 0;
  double accuracy = 0;
  PanMetrics metrics;
  friend bool operator==(const VerificationResult&, const VerificationResult&) = default;
};

inline constexpr int kReportFormatVersion = 1;

struct EvalReport {
  std::string protocol;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<NResult> nway;
  std::optional<VerificationResult> verification;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Seed of one run's task collection.
std::uint64_t run_seed(std::uint64_t seed, int n, int run) noexcept;

// For every N, builds `runs` task collections of n_sets tasks from the pool
// (seeds from run_seed) and records per-run and mean accuracy.
EvalReport run_protocol(const Selector& selector, const corpus::PiecesByAuthor& pool, const std::vector<int>& ns,
                        int n_sets, int runs, std::uint64_t seed);

// Same over task collections loaded from a task file.
std::vector<NResult> evaluate_task_set(const Selector& selector, const corpus::TaskSet& tasks);

VerificationResult evaluate_scores(std::span<const ScoredPair> pairs);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& doc, const std::string& source);
void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report(const std::filesystem::path& path);

// Tab-separated "id score truth" records after a "# authid-scores v1" line
// and a column header line.
void write_scores(std::span<const ScoredPair> pairs, const std::filesystem::path& path);
std::vector<ScoredPair> read_scores(const std::filesystem::path& path);

}  // namespace authid::evalkit
