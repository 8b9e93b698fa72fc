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
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace authid::features {

enum class TokenLevel { kChar, kWord };

TokenLevel parse_token_level(const std::string& name);
std::string_view token_level_name(TokenLevel level);

// Splits text into tokens: code points (char) or whitespace-separated words.
std::vector<std::string> tokenize(std::string_view text, TokenLevel level);

inline constexpr std::int32_t kPad = 0;
inline constexpr std::int32_t kUnk = 1;

class Vocab {
 public:
  Vocab() = default;
  // tokens[i] is the token with index i + 2; PAD and UNK are implicit.
  Vocab(TokenLevel level, std::vector<std::string> tokens);

  TokenLevel level() const { return level_; }
  std::size_t size() const { return tokens_.size() + 2; }
  std::int32_t index_of(const std::string& token) const;
  // Token text for an index; PAD and UNK render as "<pad>" / "<unk>".
  std::string token(std::int32_t index) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a over the level and token list; identifies a vocabulary in model files.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.level_ == b.level_ && a.tokens_ == b.tokens_;
  }

 private:
  TokenLevel level_ = TokenLevel::kChar;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> index_;
};

// Vocabulary over training texts, ordered by descending frequency then
// lexicographically. Throws ConfigError on an empty collection.
Vocab build_vocab(const std::vector<std::string>& texts, TokenLevel level);

struct IndexSequence {
  std::vector<std::int32_t> indices;
  std::size_t true_length = 0;
};

inline constexpr std::size_t kMinSequenceLength = 3;

// Truncates to max_len and right-pads with PAD.
IndexSequence encode(std::string_view text, const Vocab& vocab, std::size_t max_len);

// Inverse of encode for the unpadded prefix.
std::vector<std::string> decode(const IndexSequence& seq, const Vocab& vocab);

void write_vocab(const Vocab& vocab, const std::filesystem::path& path);
Vocab read_vocab(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Character n-grams for the imposters baseline.

// Length-n windows of code points containing no whitespace, with counts.
std::map<std::string, std::size_t> char_ngrams(std::string_view text, std::size_t n = 4);

class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<std::string> ngrams, std::size_t n);

  std::size_t size() const { return ngrams_.size(); }
  std::size_t ngram_length() const { return n_; }
  const std::vector<std::string>& ngrams() const { return ngrams_; }
  // -1 when absent.
  std::int64_t index_of(const std::string& ngram) const;

  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) {
    return a.n_ == b.n_ && a.ngrams_ == b.ngrams_;
  }

 private:
  std::size_t n_ = 4;
  std::vector<std::string> ngrams_;
  std::unordered_map<std::string, std::int64_t> index_;
};

// Top max_features n-grams by total count over the texts; ties broken
// lexicographically.
FeatureSpace build_feature_space(const std::vector<std::string>& texts,
                                 std::size_t max_features = 20000, std::size_t n = 4);

// Sparse nonnegative vector as (feature index, value) sorted by index.
struct SparseCounts {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double sum() const;
};

enum class Weighting { kRelativeFrequency, kCounts };

// Relative frequencies (or raw counts) of the text's in-space n-grams.
SparseCounts vectorize(std::string_view text, const FeatureSpace& space,
                       Weighting weighting = Weighting::kRelativeFrequency);

void write_feature_space(const FeatureSpace& space, const std::filesystem::path& path);
FeatureSpace read_feature_space(const std::filesystem::path& path);

}  // namespace authid::features
