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

constexpr std::size_t kSignatureSize = 6;

// Rough English letter frequencies (per mille) for the shared base distribution.
constexpr std::array<int, 26> kLetterWeights = {82, 15, 28, 43, 127, 22, 20, 61, 70, 2,  8,  40, 24,
                                                67, 75, 19, 1,  60, 63,  91, 28, 10, 24, 2,  20, 1};

// Base word lengths 1..10.
constexpr std::array<int, 10> kWordLengthWeights = {3, 17, 20, 16, 12, 10, 8, 6, 5, 3};

// Symbols signatures are drawn from: capitals, digits, punctuation, Latin-1
// letters and Greek lower case. None of them is whitespace or a-z.
const std::vector<char32_t>& signature_pool() {
  static const std::vector<char32_t> pool = [] {
    std::vector<char32_t> p;
    for (char32_t c = U'A'; c <= U'Z'; ++c) p.push_back(c);
    for (char32_t c = U'0'; c <= U'9'; ++c) p.push_back(c);
    for (char32_t c : std::u32string_view(U"!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~")) p.push_back(c);
    for (char32_t c = 0xC0; c <= 0xFF; ++c) {
      if (c != 0xD7 && c != 0xF7) p.push_back(c);
    }
    for (char32_t c = 0x3B1; c <= 0x3C9; ++c) {
      if (c != 0x3C2) p.push_back(c);
    }
    return p;
  }();
  return pool;
}

// Draws an index from unnormalised weights.
template <typename W>
std::size_t draw(Rng& rng, const W& weights, double total) {
  double u = rng.uniform01() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u < 0) return i;
  }
  return weights.size() - 1;
}

struct AuthorStyle {
  std::vector<char32_t> symbols;
  std::vector<double> symbol_weights;
  double symbol_total = 0;
  int preferred_length = 4;
};

AuthorStyle make_style(const SynthParams& params, int author_index) {
  AuthorStyle s;
  s.symbols = synth_signature_symbols(params, author_index);
  Rng rng(derive_seed(params.seed, {0x57E1, static_cast<std::uint64_t>(author_index)}));
  for (std::size_t i = 0; i < s.symbols.size(); ++i) {
    s.symbol_weights.push_back(rng.uniform(0.2, 1.0));
    s.symbol_total += s.symbol_weights.back();
  }
  s.preferred_length = 2 + static_cast<int>(rng.uniform_index(6));
  return s;
}

}  // namespace

std::vector<char32_t> synth_signature_symbols(const SynthParams& params, int author_index) {
  const auto& pool = signature_pool();
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  // The first pool/k authors take disjoint blocks of one shared permutation;
  // later authors draw independent random subsets.
  const std::size_t blocks = pool.size() / kSignatureSize;
  std::vector<char32_t> out;
  if (static_cast<std::size_t>(author_index) < blocks) {
    Rng rng(derive_seed(params.seed, {0x5100}));
    rng.shuffle(std::span(order));
    for (std::size_t k = 0; k < kSignatureSize; ++k) out.push_back(pool[order[author_index * kSignatureSize + k]]);
  } else {
    Rng rng(derive_seed(params.seed, {0x5101, static_cast<std::uint64_t>(author_index)}));
    for (std::size_t k = 0; k < kSignatureSize; ++k) {
      const std::size_t r = k + rng.uniform_index(order.size() - k);
      std::swap(order[k], order[r]);
      out.push_back(pool[order[k]]);
    }
  }
  return out;
}

Corpus synth_corpus(const SynthParams& params) {
  if (params.n_authors < 1 || params.docs_per_author < 1 || params.words_per_doc < 1) {
    throw ConfigError("synthetic corpus counts must all be >= 1");
  }
  if (!(params.signature_strength >= 0.0 && params.signature_strength <= 1.0)) {
    throw ConfigError("signature_strength must be in [0, 1]");
  }
  const double letter_total = std::accumulate(kLetterWeights.begin(), kLetterWeights.end(), 0.0);
  const double length_total = std::accumulate(kWordLengthWeights.begin(), kWordLengthWeights.end(), 0.0);
  const double strength = params.signature_strength;

  Corpus corpus;
  for (int a = 0; a < params.n_authors; ++a) {
    const AuthorStyle style = make_style(params, a);
    char author_id[32];
    std::snprintf(author_id, sizeof author_id, "author%04d", a);
    AuthorRecord rec;
    rec.author_id = author_id;
    for (int d = 0; d < params.docs_per_author; ++d) {
      Rng rng(derive_seed(params.seed, {0xD0C, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(d)}));
      std::u32string text;
      for (int w = 0; w < params.words_per_doc; ++w) {
        if (w > 0) text.push_back(w % 12 == 0 ? U'\n' : U' ');
        int len;
        if (rng.uniform01() < strength) {
          len = style.preferred_length + static_cast<int>(rng.uniform_index(3)) - 1;
        } else {
          len = 1 + static_cast<int>(draw(rng, kWordLengthWeights, length_total));
        }
        len = std::max(len, 1);
        for (int c = 0; c < len; ++c) {
          if (rng.uniform01() < strength) {
            text.push_back(style.symbols[draw(rng, style.symbol_weights, style.symbol_total)]);
          } else {
            text.push_back(static_cast<char32_t>(U'a' + draw(rng, kLetterWeights, letter_total)));
          }
        }
      }
      char doc_id[32];
      std::snprintf(doc_id, sizeof doc_id, "doc%02d", d);
      rec.documents.push_back({doc_id, rec.author_id, utf8::encode(text), std::nullopt});
    }
    corpus.authors.push_back(std::move(rec));
  }
  return corpus;
}

}  // namespace authid::corpus
