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

#include "authid/corpus/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/common/utf8.hpp"

namespace authid::corpus {
namespace fs = std::filesystem;
using nlohmann::json;

std::size_t Corpus::document_count() const {
  std::size_t n = 0;
  for (const auto& a : authors) n += a.documents.size();
  return n;
}

void Corpus::validate() const {
  std::set<std::string> seen;
  for (const auto& a : authors) {
    if (!seen.insert(a.author_id).second) throw ParseError("duplicate author id '" + a.author_id + "'");
    for (const auto& d : a.documents) {
      if (d.text.empty()) throw ParseError("document '" + d.doc_id + "' has empty text");
      if (d.author_id != a.author_id) {
        throw ParseError("document '" + d.doc_id + "' is filed under '" + a.author_id +
                         "' but names author '" + d.author_id + "'");
      }
    }
  }
}

std::string Piece::id() const {
  return author_id + "/" + source_doc_id + "#" + std::to_string(piece_number);
}

CorpusFormat parse_corpus_format(const std::string& name) {
  if (name == "author-dirs") return CorpusFormat::kAuthorDirs;
  if (name == "pan-pairs") return CorpusFormat::kPanPairs;
  throw ConfigError("unknown corpus format '" + name + "' (expected author-dirs or pan-pairs)");
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

Corpus load_author_dirs(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("corpus root is not a directory: " + root.string());
  std::vector<fs::path> author_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) author_dirs.push_back(entry.path());
  }
  std::sort(author_dirs.begin(), author_dirs.end());
  Corpus corpus;
  for (const auto& dir : author_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    AuthorRecord rec;
    rec.author_id = dir.filename().string();
    for (const auto& f : files) {
      Document d;
      d.doc_id = f.stem().string();
      d.author_id = rec.author_id;
      d.text = read_file(f);
      if (d.text.empty()) throw ParseError("empty document " + f.string());
      rec.documents.push_back(std::move(d));
    }
    corpus.authors.push_back(std::move(rec));
  }
  return corpus;
}

std::string require_string(const json& rec, const char* key, std::size_t index, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end()) {
    throw ParseError("pan-pairs record " + std::to_string(index) + " (line " + std::to_string(line) +
                     "): missing field '" + key + "'");
  }
  if (!it->is_string()) {
    throw ParseError("pan-pairs record " + std::to_string(index) + " (line " + std::to_string(line) +
                     "): field '" + key + "' is not a string");
  }
  return it->get<std::string>();
}

LoadedCorpus load_pan_pairs(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw IoError("pan-pairs file not found: " + path.string());
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  LoadedCorpus out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t index = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("pan-pairs record " + std::to_string(index) + " (line " +
                       std::to_string(line_no) + "): invalid JSON");
    }
    if (!rec.is_object()) {
      throw ParseError("pan-pairs record " + std::to_string(index) + " (line " +
                       std::to_string(line_no) + "): not an object");
    }
    const std::string id = require_string(rec, "id", index, line_no);
    const std::string a = require_string(rec, "text_a", index, line_no);
    const std::string b = require_string(rec, "text_b", index, line_no);
    const std::string label = require_string(rec, "label", index, line_no);
    if (label != "same" && label != "different") {
      throw ParseError("pan-pairs record " + std::to_string(index) + " (line " +
                       std::to_string(line_no) + "): label must be 'same' or 'different'");
    }
    if (a.empty() || b.empty()) {
      throw ParseError("pan-pairs record " + std::to_string(index) + " (line " +
                       std::to_string(line_no) + "): empty text");
    }
    if (!ids.insert(id).second) {
      throw ParseError("pan-pairs record " + std::to_string(index) + " (line " +
                       std::to_string(line_no) + "): duplicate id '" + id + "'");
    }
    const bool same = label == "same";
    const std::string author_a = same ? id : id + "/a";
    const std::string author_b = same ? id : id + "/b";
    Document da{id + "-a", author_a, a, std::nullopt};
    Document db{id + "-b", author_b, b, std::nullopt};
    if (same) {
      out.corpus.authors.push_back({author_a, {da, db}});
    } else {
      out.corpus.authors.push_back({author_a, {da}});
      out.corpus.authors.push_back({author_b, {db}});
    }
    PairExample pair;
    pair.id = id;
    pair.left = Piece{author_a, da.doc_id, 0, 1, a};
    pair.right = Piece{author_b, db.doc_id, 0, 1, b};
    pair.label = same ? 1 : 0;
    out.pairs.push_back(std::move(pair));
    ++index;
  }
  return out;
}

}  // namespace

LoadedCorpus load_corpus(const fs::path& root, CorpusFormat format) {
  if (!fs::exists(root)) throw IoError("corpus path does not exist: " + root.string());
  LoadedCorpus out;
  if (format == CorpusFormat::kAuthorDirs) {
    out.corpus = load_author_dirs(root);
  } else {
    out = load_pan_pairs(root);
  }
  out.corpus.validate();
  return out;
}

std::vector<Piece> chunk_document(const Document& doc, int n_pieces) {
  if (n_pieces < 1) throw ConfigError("n_pieces must be >= 1");
  const auto words = utf8::word_spans(doc.text);
  if (words.size() < static_cast<std::size_t>(n_pieces)) {
    throw TooShort("document '" + doc.doc_id + "' has " + std::to_string(words.size()) +
                   " words, fewer than " + std::to_string(n_pieces) + " pieces");
  }
  const std::size_t base = words.size() / n_pieces;
  const std::size_t extra = words.size() % n_pieces;
  std::vector<Piece> pieces;
  pieces.reserve(n_pieces);
  std::size_t w = 0;
  for (int k = 0; k < n_pieces; ++k) {
    const std::size_t count = base + (static_cast<std::size_t>(k) < extra ? 1 : 0);
    const std::size_t begin = words[w].begin;
    const std::size_t end = words[w + count - 1].end;
    w += count;
    Piece p;
    p.author_id = doc.author_id;
    p.source_doc_id = doc.doc_id;
    p.piece_number = k;
    p.chunk_index = k * 4 / n_pieces + 1;
    p.text = doc.text.substr(begin, end - begin);
    pieces.push_back(std::move(p));
  }
  return pieces;
}

ChunkedCorpus chunk_corpus(const Corpus& corpus, int n_pieces) {
  ChunkedCorpus out;
  for (const auto& a : corpus.authors) {
    for (const auto& d : a.documents) {
      try {
        auto pieces = chunk_document(d, n_pieces);
        auto& dst = out.pieces[a.author_id];
        for (auto& p : pieces) dst.push_back(std::move(p));
      } catch (const TooShort&) {
        ++out.skipped_documents;
      }
    }
  }
  return out;
}

KnownAuthSplit split_known_auth(const PiecesByAuthor& pieces, double train_frac,
                                std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) throw ConfigError("train_frac must be in (0, 1)");
  KnownAuthSplit out;
  std::uint64_t rank = 0;
  for (const auto& [author, list] : pieces) {
    ++rank;
    if (list.size() < 4) {
      ++out.skipped_authors;
      continue;
    }
    // Per-author stream keyed by rank so splits never depend on std::hash.
    Rng rng(derive_seed(seed, {rank}));
    std::array<std::vector<std::size_t>, 4> by_chunk;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int c = std::clamp(list[i].chunk_index, 1, 4);
      by_chunk[c - 1].push_back(i);
    }
    for (auto& v : by_chunk) rng.shuffle(std::span<std::size_t>(v));
    const auto n_train = static_cast<std::size_t>(std::floor(train_frac * list.size()));
    const std::size_t n_test = list.size() - n_train;
    std::vector<bool> is_test(list.size(), false);
    std::array<std::size_t, 4> cursor{};
    std::size_t taken = 0;
    while (taken < n_test) {
      for (int c = 0; c < 4 && taken < n_test; ++c) {
        if (cursor[c] < by_chunk[c].size()) {
          is_test[by_chunk[c][cursor[c]++]] = true;
          ++taken;
        }
      }
    }
    auto& train = out.train[author];
    auto& test = out.test[author];
    for (std::size_t i = 0; i < list.size(); ++i) (is_test[i] ? test : train).push_back(list[i]);
  }
  return out;
}

OneShotSplit split_one_shot(const Corpus& corpus, double author_frac, std::uint64_t seed) {
  if (corpus.authors.size() < 3) throw ConfigError("one-shot split needs at least 3 authors");
  if (!(author_frac > 0.0 && author_frac < 1.0)) throw ConfigError("author_frac must be in (0, 1)");
  const std::size_t n = corpus.authors.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(derive_seed(seed, {0x05E5}));
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(std::floor(author_frac * static_cast<double>(n)));
  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;
  OneShotSplit out;
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? out.train : out.test).authors.push_back(corpus.authors[i]);
  }
  return out;
}

PairSplit hold_out_validation(std::vector<PairExample> pairs, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ConfigError("validation fraction must be in [0, 1)");
  const auto n_val = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(pairs.size())));
  PairSplit out;
  const std::size_t n_train = pairs.size() - n_val;
  out.train.assign(std::make_move_iterator(pairs.begin()),
                   std::make_move_iterator(pairs.begin() + static_cast<std::ptrdiff_t>(n_train)));
  out.validation.assign(std::make_move_iterator(pairs.begin() + static_cast<std::ptrdiff_t>(n_train)),
                        std::make_move_iterator(pairs.end()));
  return out;
}

PiecesByAuthor group_by_author(const std::vector<Piece>& pieces) {
  PiecesByAuthor out;
  for (const auto& p : pieces) out[p.author_id].push_back(p);
  return out;
}

void write_author_dirs(const Corpus& corpus, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());
  for (const auto& a : corpus.authors) {
    const fs::path dir = root / a.author_id;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& d : a.documents) {
      std::ofstream out(dir / (d.doc_id + ".txt"), std::ios::binary);
      out << d.text;
      if (!out) throw IoError("cannot write " + (dir / (d.doc_id + ".txt")).string());
    }
  }
}

}  // namespace authid::corpus
