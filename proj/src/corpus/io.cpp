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

#include "authid/corpus/io.hpp"

#include <map>

#include "authid/common/error.hpp"
#include "authid/common/json_io.hpp"

namespace authid::corpus {
namespace fs = std::filesystem;
using nlohmann::json;

json piece_to_json(const Piece& p) {
  return {{"author", p.author_id},
          {"doc", p.source_doc_id},
          {"piece", p.piece_number},
          {"chunk", p.chunk_index},
          {"text", p.text}};
}

Piece piece_from_json(const json& j) {
  Piece p;
  p.author_id = j.at("author").get<std::string>();
  p.source_doc_id = j.at("doc").get<std::string>();
  p.piece_number = j.at("piece").get<int>();
  p.chunk_index = j.at("chunk").get<int>();
  p.text = j.at("text").get<std::string>();
  if (p.chunk_index < 1 || p.chunk_index > 4) throw ParseError("chunk index out of range");
  return p;
}

void write_pair_set(const PairSet& set, const fs::path& path) {
  json pairs = json::array();
  for (const auto& p : set.pairs) {
    pairs.push_back({{"id", p.id},
                     {"label", p.label},
                     {"left", piece_to_json(p.left)},
                     {"right", piece_to_json(p.right)}});
  }
  json doc = {{"format", "authid-pairs"},
              {"version", kPairSetVersion},
              {"seed", set.seed},
              {"params", set.params},
              {"pairs", std::move(pairs)}};
  write_json_file(doc, path);
}

PairSet read_pair_set(const fs::path& path) {
  const json doc = read_json_file(path);
  check_header(doc, "authid-pairs", kPairSetVersion, path);
  PairSet set;
  set.seed = doc.value("seed", std::uint64_t{0});
  set.params = doc.value("params", json::object());
  if (!doc.contains("pairs") || !doc["pairs"].is_array()) throw ParseError(path.string() + ": missing pairs array");
  std::size_t index = 0;
  for (const auto& rec : doc["pairs"]) {
    try {
      PairExample p;
      p.id = rec.at("id").get<std::string>();
      p.label = rec.at("label").get<int>();
      p.left = piece_from_json(rec.at("left"));
      p.right = piece_from_json(rec.at("right"));
      if (p.label != 0 && p.label != 1) throw ParseError("label must be 0 or 1");
      set.pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": pair record " + std::to_string(index) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": pair record " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return set;
}

void write_task_set(const TaskSet& set, const fs::path& path) {
  json pieces = json::array();
  for (const auto& [author, list] : set.pool) {
    for (const auto& p : list) {
      json j = piece_to_json(p);
      j["id"] = p.id();
      pieces.push_back(std::move(j));
    }
  }
  json runs = json::array();
  for (const auto& r : set.runs) {
    json tasks = json::array();
    for (const auto& t : r.tasks) {
      json cands = json::array();
      for (const auto& c : t.candidates) cands.push_back(c.id());
      tasks.push_back({{"probe", t.probe.id()}, {"candidates", std::move(cands)}, {"positive_index", t.positive_index}});
    }
    runs.push_back({{"n", r.n}, {"run", r.run}, {"seed", r.seed}, {"tasks", std::move(tasks)}});
  }
  json doc = {{"format", "authid-tasks"},
              {"version", kTaskSetVersion},
              {"seed", set.seed},
              {"params", set.params},
              {"pieces", std::move(pieces)},
              {"runs", std::move(runs)}};
  write_json_file(doc, path);
}

TaskSet read_task_set(const fs::path& path) {
  const json doc = read_json_file(path);
  check_header(doc, "authid-tasks", kTaskSetVersion, path);
  TaskSet set;
  set.seed = doc.value("seed", std::uint64_t{0});
  set.params = doc.value("params", json::object());
  std::map<std::string, Piece> by_id;
  try {
    for (const auto& j : doc.at("pieces")) {
      Piece p = piece_from_json(j);
      if (j.at("id").get<std::string>() != p.id()) throw ParseError("piece id does not match its fields");
      set.pool[p.author_id].push_back(p);
      by_id.emplace(p.id(), std::move(p));
    }
    auto lookup = [&](const json& id) -> const Piece& {
      auto it = by_id.find(id.get<std::string>());
      if (it == by_id.end()) throw ParseError("unknown piece id '" + id.get<std::string>() + "'");
      return it->second;
    };
    for (const auto& jr : doc.at("runs")) {
      TaskRun run;
      run.n = jr.at("n").get<int>();
      run.run = jr.at("run").get<int>();
      run.seed = jr.at("seed").get<std::uint64_t>();
      for (const auto& jt : jr.at("tasks")) {
        NWayTask t;
        t.probe = lookup(jt.at("probe"));
        for (const auto& c : jt.at("candidates")) t.candidates.push_back(lookup(c));
        t.positive_index = jt.at("positive_index").get<std::size_t>();
        if (t.positive_index >= t.candidates.size()) throw ParseError("positive_index out of range");
        run.tasks.push_back(std::move(t));
      }
      set.runs.push_back(std::move(run));
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return set;
}

}  // namespace authid::corpus
