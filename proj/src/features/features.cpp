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

#include "authid/features/features.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "authid/common/error.hpp"
#include "authid/common/utf8.hpp"
#include "authid/common/json_io.hpp"

namespace authid::features {
using nlohmann::json;

TokenLevel parse_token_level(const std::string& name) {
  if (name == "char") return TokenLevel::kChar;
  if (name == "word") return TokenLevel::kWord;
  throw ConfigError("unknown input level '" + name + "' (expected char or word)");
}

std::string_view token_level_name(TokenLevel level) {
  return level == TokenLevel::kChar ? "char" : "word";
}

std::vector<std::string> tokenize(std::string_view text, TokenLevel level) {
  std::vector<std::string> out;
  if (level == TokenLevel::kChar) {
    for (char32_t cp : utf8::decode(text)) out.push_back(utf8::encode(cp));
  } else {
    for (const auto& w : utf8::word_spans(text)) out.emplace_back(text.substr(w.begin, w.end - w.begin));
  }
  return out;
}

Vocab::Vocab(TokenLevel level, std::vector<std::string> tokens) : level_(level), tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<std::int32_t>(i + 2)).second) {
      throw ParseError("duplicate vocabulary token");
    }
  }
}

std::int32_t Vocab::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

std::string Vocab::token(std::int32_t index) const {
  if (index == kPad) return "<pad>";
  if (index == kUnk || index < 0 || static_cast<std::size_t>(index) >= size()) return "<unk>";
  return tokens_[index - 2];
}

std::uint64_t Vocab::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    h ^= 0xFF;
    h *= 0x100000001b3ull;
  };
  mix(token_level_name(level_));
  for (const auto& t : tokens_) mix(t);
  return h;
}

namespace {

std::vector<std::string> rank_by_count(const std::map<std::string, std::size_t>& counts) {
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(), counts.end());
  // counts is already in lexicographic order, so a stable sort on count
  // leaves ties lexicographic.
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (auto& [tok, n] : items) out.push_back(std::move(tok));
  return out;
}

}  // namespace

Vocab build_vocab(const std::vector<std::string>& texts, TokenLevel level) {
  if (texts.empty()) throw ConfigError("cannot build a vocabulary from no texts");
  std::map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (auto& tok : tokenize(t, level)) ++counts[std::move(tok)];
  }
  return Vocab(level, rank_by_count(counts));
}

IndexSequence encode(std::string_view text, const Vocab& vocab, std::size_t max_len) {
  if (max_len < kMinSequenceLength) {
    throw ConfigError("max_len " + std::to_string(max_len) + " is below the minimum of " +
                      std::to_string(kMinSequenceLength));
  }
  IndexSequence seq;
  seq.indices.assign(max_len, kPad);
  std::size_t i = 0;
  if (vocab.level() == TokenLevel::kChar) {
    for (char32_t cp : utf8::decode(text)) {
      if (i == max_len) break;
      seq.indices[i++] = vocab.index_of(utf8::encode(cp));
    }
  } else {
    for (const auto& w : utf8::word_spans(text)) {
      if (i == max_len) break;
      seq.indices[i++] = vocab.index_of(std::string(text.substr(w.begin, w.end - w.begin)));
    }
  }
  seq.true_length = i;
  return seq;
}

std::vector<std::string> decode(const IndexSequence& seq, const Vocab& vocab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < seq.true_length; ++i) out.push_back(vocab.token(seq.indices[i]));
  return out;
}

void write_vocab(const Vocab& vocab, const std::filesystem::path& path) {
  json doc = {{"format", "authid-vocab"},
              {"version", 1},
              {"level", std::string(token_level_name(vocab.level()))},
              {"reserved", {"<pad>", "<unk>"}},
              {"tokens", vocab.tokens()}};
  write_json_file(doc, path);
}

Vocab read_vocab(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  check_header(doc, "authid-vocab", 1, path);
  try {
    return Vocab(parse_token_level(doc.at("level").get<std::string>()),
                 doc.at("tokens").get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::map<std::string, std::size_t> char_ngrams(std::string_view text, std::size_t n) {
  if (n < 1) throw ConfigError("n-gram length must be >= 1");
  std::map<std::string, std::size_t> out;
  const std::u32string cps = utf8::decode(text);
  if (cps.size() < n) return out;
  // Length of the whitespace-free run ending at each position.
  std::size_t run = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    run = utf8::is_space(cps[i]) ? 0 : run + 1;
    if (run >= n) ++out[utf8::encode(std::u32string_view(cps).substr(i + 1 - n, n))];
  }
  return out;
}

FeatureSpace::FeatureSpace(std::vector<std::string> ngrams, std::size_t n) : n_(n), ngrams_(std::move(ngrams)) {
  for (std::size_t i = 0; i < ngrams_.size(); ++i) {
    if (!index_.emplace(ngrams_[i], static_cast<std::int64_t>(i)).second) {
      throw ParseError("duplicate n-gram in feature space");
    }
  }
}

std::int64_t FeatureSpace::index_of(const std::string& ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? -1 : it->second;
}

FeatureSpace build_feature_space(const std::vector<std::string>& texts, std::size_t max_features,
                                 std::size_t n) {
  if (texts.empty()) throw ConfigError("cannot build a feature space from no texts");
  std::map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (const auto& [g, c] : char_ngrams(t, n)) counts[g] += c;
  }
  auto ranked = rank_by_count(counts);
  if (ranked.size() > max_features) ranked.resize(max_features);
  return FeatureSpace(std::move(ranked), n);
}

double SparseCounts::sum() const {
  double s = 0;
  for (const auto& [i, v] : entries) s += v;
  return s;
}

SparseCounts vectorize(std::string_view text, const FeatureSpace& space, Weighting weighting) {
  SparseCounts out;
  double total = 0;
  for (const auto& [g, c] : char_ngrams(text, space.ngram_length())) {
    const auto idx = space.index_of(g);
    if (idx < 0) continue;
    out.entries.emplace_back(static_cast<std::uint32_t>(idx), static_cast<double>(c));
    total += static_cast<double>(c);
  }
  std::sort(out.entries.begin(), out.entries.end());
  if (weighting == Weighting::kRelativeFrequency && total > 0) {
    for (auto& [i, v] : out.entries) v /= total;
  }
  return out;
}

void write_feature_space(const FeatureSpace& space, const std::filesystem::path& path) {
  json doc = {{"format", "authid-features"}, {"version", 1}, {"n", space.ngram_length()}, {"ngrams", space.ngrams()}};
  write_json_file(doc, path);
}

FeatureSpace read_feature_space(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  check_header(doc, "authid-features", 1, path);
  try {
    return FeatureSpace(doc.at("ngrams").get<std::vector<std::string>>(), doc.at("n").get<std::size_t>());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace authid::features
