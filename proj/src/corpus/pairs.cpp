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

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/common/utf8.hpp"
#include "authid/corpus/corpus.hpp"

namespace authid::corpus {
namespace {

std::string pair_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%06zu", i);
  return buf;
}

std::vector<const Piece*> pieces_in_chunk(const std::vector<Piece>& list, int chunk) {
  std::vector<const Piece*> out;
  for (const auto& p : list) {
    if (p.chunk_index == chunk) out.push_back(&p);
  }
  return out;
}

// Matches chunk-3 pieces against chunk-4 pieces of other authors, each
// chunk-4 piece used at most once. The partner author is drawn uniformly
// among authors that still have unused chunk-4 pieces; when only the
// query's own author is left, an earlier match is swapped to free a slot.
std::vector<std::pair<const Piece*, const Piece*>> match_different(
    const std::vector<std::vector<const Piece*>>& chunk3,
    std::vector<std::vector<const Piece*>> chunk4, Rng& rng) {
  const std::size_t n_authors = chunk3.size();
  std::vector<std::pair<std::size_t, std::size_t>> queries;  // (author, index)
  for (std::size_t a = 0; a < n_authors; ++a) {
    for (std::size_t i = 0; i < chunk3[a].size(); ++i) queries.emplace_back(a, i);
  }
  rng.shuffle(std::span(queries));
  for (auto& v : chunk4) rng.shuffle(std::span(v));

  struct Match {
    std::size_t left_author;
    const Piece* left;
    std::size_t right_author;
    const Piece* right;
  };
  std::vector<Match> matches;
  std::vector<std::size_t> donors;
  for (const auto& [a, i] : queries) {
    donors.clear();
    for (std::size_t b = 0; b < n_authors; ++b) {
      if (b != a && !chunk4[b].empty()) donors.push_back(b);
    }
    if (!donors.empty()) {
      const std::size_t b = donors[rng.uniform_index(donors.size())];
      matches.push_back({a, chunk3[a][i], b, chunk4[b].back()});
      chunk4[b].pop_back();
      continue;
    }
    if (chunk4[a].empty() || matches.empty()) continue;
    // Only our own chunk-4 pieces remain: give one to an earlier match and
    // take its partner, provided neither side ends up self-paired.
    const std::size_t start = rng.uniform_index(matches.size());
    for (std::size_t k = 0; k < matches.size(); ++k) {
      Match& m = matches[(start + k) % matches.size()];
      if (m.left_author != a && m.right_author != a) {
        const Piece* freed = m.right;
        const std::size_t freed_author = m.right_author;
        m.right = chunk4[a].back();
        m.right_author = a;
        chunk4[a].pop_back();
        matches.push_back({a, chunk3[a][i], freed_author, freed});
        break;
      }
    }
  }
  std::vector<std::pair<const Piece*, const Piece*>> out;
  out.reserve(matches.size());
  for (const auto& m : matches) out.emplace_back(m.left, m.right);
  return out;
}

}  // namespace

std::vector<PairExample> generate_pairs(const PiecesByAuthor& pieces, std::uint64_t seed) {
  std::size_t n_authors = 0;
  for (const auto& [author, list] : pieces) n_authors += list.empty() ? 0 : 1;
  if (n_authors < 2) throw ConfigError("pair generation needs at least 2 authors");

  Rng rng(derive_seed(seed, {0xBA1A}));
  std::vector<PairExample> same;
  std::vector<std::vector<const Piece*>> chunk3;
  std::vector<std::vector<const Piece*>> chunk4;
  for (const auto& [author, list] : pieces) {
    auto c1 = pieces_in_chunk(list, 1);
    auto c2 = pieces_in_chunk(list, 2);
    rng.shuffle(std::span(c1));
    rng.shuffle(std::span(c2));
    const std::size_t k = std::min(c1.size(), c2.size());
    for (std::size_t i = 0; i < k; ++i) same.push_back({"", *c1[i], *c2[i], 1});
    chunk3.push_back(pieces_in_chunk(list, 3));
    chunk4.push_back(pieces_in_chunk(list, 4));
  }
  std::vector<PairExample> different;
  for (const auto& [l, r] : match_different(chunk3, chunk4, rng)) different.push_back({"", *l, *r, 0});

  // Trim the larger class so the output is exactly balanced.
  const std::size_t target = std::min(same.size(), different.size());
  rng.shuffle(std::span(same));
  rng.shuffle(std::span(different));
  same.resize(target);
  different.resize(target);

  std::vector<PairExample> out;
  out.reserve(2 * target);
  for (auto& p : same) out.push_back(std::move(p));
  for (auto& p : different) out.push_back(std::move(p));
  rng.shuffle(std::span(out));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = pair_id(i);
  return out;
}

std::vector<PairExample> pan15_pairs(const Pan15Problem& problem, Pan15Strategy strategy,
                                     std::uint64_t seed) {
  if (problem.known.empty()) throw ConfigError("PAN-15 problem '" + problem.problem_id + "' has no known documents");
  const int label = problem.same_author ? 1 : 0;
  std::vector<PairExample> out;
  auto whole = [](const Document& d, std::string text) {
    return Piece{d.author_id, d.doc_id, 0, 1, std::move(text)};
  };
  auto next_id = [&] { return problem.problem_id + "-" + std::to_string(out.size()); };

  switch (strategy) {
    case Pan15Strategy::kA:
      for (const auto& k : problem.known) {
        out.push_back({next_id(), whole(problem.unknown, problem.unknown.text), whole(k, k.text), label});
      }
      break;
    case Pan15Strategy::kB: {
      std::size_t shortest = utf8::length(problem.unknown.text);
      for (const auto& k : problem.known) shortest = std::min(shortest, utf8::length(k.text));
      const std::string u = utf8::prefix(problem.unknown.text, shortest);
      for (const auto& k : problem.known) {
        out.push_back({next_id(), whole(problem.unknown, u), whole(k, utf8::prefix(k.text, shortest)), label});
      }
      break;
    }
    case Pan15Strategy::kC:
    case Pan15Strategy::kD: {
      Rng rng(derive_seed(seed, {0x9A15}));
      const auto u = chunk_document(problem.unknown, 3);
      for (const auto& k : problem.known) {
        const auto kp = chunk_document(k, 3);
        std::array<std::size_t, 3> order{0, 1, 2};
        if (strategy == Pan15Strategy::kD) rng.shuffle(std::span(order));
        for (std::size_t i = 0; i < 3; ++i) out.push_back({next_id(), u[i], kp[order[i]], label});
      }
      break;
    }
  }
  return out;
}

std::vector<NWayTask> build_nway_tasks(const PiecesByAuthor& pieces, int n, int n_sets,
                                       std::uint64_t seed) {
  if (n < 1) throw ConfigError("N must be >= 1");
  if (n_sets < 0) throw ConfigError("n_sets must be >= 0");
  std::vector<const std::vector<Piece>*> authors;
  std::vector<std::size_t> probe_authors;
  for (const auto& [author, list] : pieces) {
    if (list.empty()) continue;
    if (list.size() >= 2) probe_authors.push_back(authors.size());
    authors.push_back(&list);
  }
  if (static_cast<std::size_t>(n) > authors.size()) {
    throw ConfigError("N=" + std::to_string(n) + " exceeds the " + std::to_string(authors.size()) +
                      " authors available");
  }
  if (probe_authors.empty()) throw ConfigError("no author has the two pieces a probe needs");

  Rng rng(derive_seed(seed, {0x7A5C, static_cast<std::uint64_t>(n)}));
  std::vector<std::size_t> others(authors.size());
  std::iota(others.begin(), others.end(), 0);
  std::vector<NWayTask> tasks;
  tasks.reserve(n_sets);
  for (int t = 0; t < n_sets; ++t) {
    const std::size_t a = probe_authors[rng.uniform_index(probe_authors.size())];
    const auto& own = *authors[a];
    const std::size_t i = rng.uniform_index(own.size());
    std::size_t j = rng.uniform_index(own.size() - 1);
    if (j >= i) ++j;

    // Partial Fisher-Yates over all authors, skipping the probe author.
    std::swap(others[std::find(others.begin(), others.end(), a) - others.begin()], others.back());
    const std::size_t pool = others.size() - 1;
    for (int k = 0; k < n - 1; ++k) {
      const std::size_t r = k + rng.uniform_index(pool - k);
      std::swap(others[k], others[r]);
    }

    NWayTask task;
    task.probe = own[i];
    task.positive_index = rng.uniform_index(n);
    task.candidates.reserve(n);
    int next_other = 0;
    for (int c = 0; c < n; ++c) {
      if (static_cast<std::size_t>(c) == task.positive_index) {
        task.candidates.push_back(own[j]);
      } else {
        const auto& list = *authors[others[next_other++]];
        task.candidates.push_back(list[rng.uniform_index(list.size())]);
      }
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace authid::corpus
