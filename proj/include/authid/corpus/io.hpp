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
#include <vector>

#include <nlohmann/json.hpp>

#include "authid/corpus/corpus.hpp"

namespace authid::corpus {

inline constexpr int kPairSetVersion = 1;
inline constexpr int kTaskSetVersion = 1;

// A serialized list of pairs plus the generation parameters that produced it.
struct PairSet {
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<PairExample> pairs;
};

struct TaskRun {
  int n = 0;
  int run = 0;
  std::uint64_t seed = 0;
  std::vector<NWayTask> tasks;
};

// N-way task collections over one test pool. Pieces are stored once and
// tasks reference them by id.
struct TaskSet {
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  PiecesByAuthor pool;
  std::vector<TaskRun> runs;
};

void write_pair_set(const PairSet& set, const std::filesystem::path& path);
PairSet read_pair_set(const std::filesystem::path& path);

void write_task_set(const TaskSet& set, const std::filesystem::path& path);
TaskSet read_task_set(const std::filesystem::path& path);

nlohmann::json piece_to_json(const Piece& p);
Piece piece_from_json(const nlohmann::json& j);

}  // namespace authid::corpus
