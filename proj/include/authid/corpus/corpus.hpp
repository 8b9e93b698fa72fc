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
#include <optional>
#include <string>
#include <vector>

namespace authid::corpus {

struct Document {
  std::string doc_id;
  std::string author_id;
  std::string text;
  std::optional<std::string> fandom;
};

struct AuthorRecord {
  std::string author_id;
  std::vector<Document> documents;
};

struct Corpus {
  std::vector<AuthorRecord> authors;

  std::size_t document_count() const;
  // Throws ParseError on duplicate author ids, empty texts, or documents
  // whose author_id does not match their record.
  void validate() const;
};

// A fixed-size subdivision of a document. piece_number is the 0-based
// position inside the source document; chunk_index groups positions into
// four chunks (pieces 1-2 -> 1, ..., 7-8 -> 4 for eight pieces).
struct Piece {
  std::string author_id;
  std::string source_doc_id;
  int piece_number = 0;
  int chunk_index = 1;
  std::string text;

  std::string id() const;
  friend bool operator==(const Piece&, const Piece&) = default;
};

struct PairExample {
  std::string id;
  Piece left;
  Piece right;
  int label = 0;  // 1 = same author
};

struct NWayTask {
  Piece probe;
  std::vector<Piece> candidates;
  std::size_t positive_index = 0;
};

// Author id -> that author's pieces. Ordered so every operation iterates
// authors deterministically.
using PiecesByAuthor = std::map<std::string, std::vector<Piece>>;

enum class CorpusFormat { kAuthorDirs, kPanPairs };

CorpusFormat parse_corpus_format(const std::string& name);

struct LoadedCorpus {
  Corpus corpus;
  // Only filled for pan-pairs input: one whole-text pair per record.
  std::vector<PairExample> pairs;
};

// author-dirs: <root>/<author_id>/<doc_id>.txt
// pan-pairs:   JSON Lines, {"id", "text_a", "text_b", "label": "same"|"different"}
LoadedCorpus load_corpus(const std::filesystem::path& root, CorpusFormat format);

std::vector<Piece> chunk_document(const Document& doc, int n_pieces = 8);

struct ChunkedCorpus {
  PiecesByAuthor pieces;
  std::size_t skipped_documents = 0;
};

// Chunks every document; documents shorter than n_pieces words are skipped.
ChunkedCorpus chunk_corpus(const Corpus& corpus, int n_pieces = 8);

struct KnownAuthSplit {
  PiecesByAuthor train;
  PiecesByAuthor test;
  std::size_t skipped_authors = 0;
};

// Per author: floor(train_frac * pieces) pieces to train, the rest to test.
// Test pieces are drawn round-robin over chunk indices 1..4 so both sides
// keep pieces from every chunk where possible. Authors with fewer than four
// pieces are skipped and counted.
KnownAuthSplit split_known_auth(const PiecesByAuthor& pieces, double train_frac,
                                std::uint64_t seed);

struct OneShotSplit {
  Corpus train;
  Corpus test;
};

OneShotSplit split_one_shot(const Corpus& corpus, double author_frac, std::uint64_t seed);

std::vector<PairExample> generate_pairs(const PiecesByAuthor& pieces, std::uint64_t seed);

struct PairSplit {
  std::vector<PairExample> train;
  std::vector<PairExample> validation;
};

// The final `fraction` of the list becomes validation.
PairSplit hold_out_validation(std::vector<PairExample> pairs, double fraction = 0.1);

enum class Pan15Strategy { kA, kB, kC, kD };

struct Pan15Problem {
  std::string problem_id;
  Document unknown;
  std::vector<Document> known;
  bool same_author = false;
};

std::vector<PairExample> pan15_pairs(const Pan15Problem& problem, Pan15Strategy strategy,
                                     std::uint64_t seed = 0);

std::vector<NWayTask> build_nway_tasks(const PiecesByAuthor& pieces, int n, int n_sets,
                                       std::uint64_t seed);

struct SynthParams {
  int n_authors = 10;
  int docs_per_author = 2;
  int words_per_doc = 1000;
  double signature_strength = 0.8;
  std::uint64_t seed = 0;
};

Corpus synth_corpus(const SynthParams& params);

// Symbols an author's signature distribution draws from; exposed for tests.
std::vector<char32_t> synth_signature_symbols(const SynthParams& params, int author_index);

// Writes a corpus in the author-dirs layout.
void write_author_dirs(const Corpus& corpus, const std::filesystem::path& root);

PiecesByAuthor group_by_author(const std::vector<Piece>& pieces);

}  // namespace authid::corpus
