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

#include <memory>
#include <string>
#include <vector>

#include "authid/common/rng.hpp"
#include "authid/corpus/corpus.hpp"
#include "authid/features/features.hpp"
#include "authid/siamese/model.hpp"

namespace authid::testing {

inline siamese::SubNetConfig tiny_subnet(std::size_t vocab_size, std::size_t max_len = 24) {
  siamese::SubNetConfig c;
  c.embed_dim = 4;
  c.conv_channels = {3, 3, 3, 3};
  c.kernel_widths = {1, 2, 3, 3};
  c.dense_dim = 5;
  c.vocab_size = vocab_size;
  c.max_len = max_len;
  return c;
}

inline std::shared_ptr<const features::Vocab> letters_vocab() {
  std::vector<std::string> toks;
  for (char c = 'a'; c <= 'z'; ++c) toks.emplace_back(1, c);
  toks.emplace_back(" ");
  return std::make_shared<const features::Vocab>(features::TokenLevel::kChar, toks);
}

inline std::string random_text(Rng& rng, std::size_t n, const std::string& alphabet = "abcdefghij ") {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[rng.uniform_index(alphabet.size())]);
  return s;
}

inline corpus::PiecesByAuthor synth_pieces(int authors, int docs, int words, double strength, std::uint64_t seed) {
  corpus::SynthParams p;
  p.n_authors = authors;
  p.docs_per_author = docs;
  p.words_per_doc = words;
  p.signature_strength = strength;
  p.seed = seed;
  return corpus::chunk_corpus(corpus::synth_corpus(p), 8).pieces;
}

inline std::vector<std::string> pair_texts(const std::vector<corpus::PairExample>& pairs) {
  std::vector<std::string> out;
  for (const auto& p : pairs) {
    out.push_back(p.left.text);
    out.push_back(p.right.text);
  }
  return out;
}

}  // namespace authid::testing
