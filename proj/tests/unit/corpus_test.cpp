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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "authid/common/error.hpp"
#include "authid/common/utf8.hpp"
#include "authid/corpus/corpus.hpp"
#include "authid/corpus/io.hpp"
#include "temp_dir.hpp"

namespace authid::corpus {
namespace {

std::string words(int n, const std::string& stem = "w") {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " " : "") + stem + std::to_string(i);
  return s;
}

Corpus simple_corpus(int n_authors, int docs_each, int words_each) {
  Corpus c;
  for (int a = 0; a < n_authors; ++a) {
    AuthorRecord r{"a" + std::to_string(1000 + a), {}};
    for (int d = 0; d < docs_each; ++d) {
      r.documents.push_back({"d" + std::to_string(d), r.author_id, words(words_each, r.author_id + "_"), std::nullopt});
    }
    c.authors.push_back(r);
  }
  return c;
}

std::size_t count_words(const std::string& s) { return utf8::word_spans(s).size(); }

TEST(LoadCorpus, AuthorDirs) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "alice");
  std::filesystem::create_directories(dir / "bob");
  testing::spit(dir / "alice" / "one.txt", "hello there");
  testing::spit(dir / "bob" / "two.txt", "general kenobi");
  const auto lc = load_corpus(dir.path(), CorpusFormat::kAuthorDirs);
  ASSERT_EQ(lc.corpus.authors.size(), 2u);
  EXPECT_EQ(lc.corpus.document_count(), 2u);
  EXPECT_EQ(lc.corpus.authors[0].author_id, "alice");
  EXPECT_EQ(lc.corpus.authors[0].documents[0].text, "hello there");
}

TEST(LoadCorpus, PanPairs) {
  testing::TempDir dir;
  testing::spit(dir / "p.jsonl",
                R"({"id":"x1","text_a":"a b","text_b":"c d","label":"same"})"
                "\n"
                R"({"id":"x2","text_a":"e f","text_b":"g h","label":"different"})"
                "\n\n"
                R"({"id":"x3","text_a":"i j","text_b":"k l","label":"same"})"
                "\n");
  const auto lc = load_corpus(dir / "p.jsonl", CorpusFormat::kPanPairs);
  ASSERT_EQ(lc.pairs.size(), 3u);
  EXPECT_EQ(lc.pairs[0].label, 1);
  EXPECT_EQ(lc.pairs[1].label, 0);
  EXPECT_EQ(lc.pairs[2].label, 1);
  EXPECT_EQ(lc.pairs[1].left.text, "e f");
  EXPECT_NE(lc.pairs[1].left.author_id, lc.pairs[1].right.author_id);
  EXPECT_EQ(lc.pairs[0].left.author_id, lc.pairs[0].right.author_id);
}

TEST(LoadCorpus, PanPairsMissingLabelNamesRecord) {
  testing::TempDir dir;
  testing::spit(dir / "p.jsonl",
                R"({"id":"x1","text_a":"a","text_b":"b","label":"same"})"
                "\n"
                R"({"id":"x2","text_a":"a","text_b":"b"})"
                "\n");
  try {
    load_corpus(dir / "p.jsonl", CorpusFormat::kPanPairs);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("record 1"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("label"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, MissingPathAndUnknownFormat) {
  EXPECT_THROW(load_corpus("/nonexistent/authid/corpus", CorpusFormat::kAuthorDirs), IoError);
  EXPECT_THROW(parse_corpus_format("xml"), ConfigError);
  EXPECT_EQ(parse_corpus_format("pan-pairs"), CorpusFormat::kPanPairs);
}

TEST(Chunking, TwoThousandWords) {
  const Document d{"d", "a", words(2000), std::nullopt};
  const auto pieces = chunk_document(d, 8);
  ASSERT_EQ(pieces.size(), 8u);
  for (const auto& p : pieces) EXPECT_EQ(count_words(p.text), 250u);
  EXPECT_EQ(pieces[0].text.substr(0, 6), "w0 w1 ");
}

TEST(Chunking, OneThousandWordsAndChunkIndices) {
  const Document d{"d", "a", words(1000), std::nullopt};
  const auto pieces = chunk_document(d, 8);
  ASSERT_EQ(pieces.size(), 8u);
  const int expected_chunk[] = {1, 1, 2, 2, 3, 3, 4, 4};
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(count_words(pieces[k].text), 125u);
    EXPECT_EQ(pieces[k].piece_number, k);
    EXPECT_EQ(pieces[k].chunk_index, expected_chunk[k]);
  }
}

TEST(Chunking, TooShort) {
  const Document d{"d", "a", words(7), std::nullopt};
  EXPECT_THROW(chunk_document(d, 8), TooShort);
  Corpus c;
  c.authors.push_back({"a", {d, Document{"e", "a", words(16), std::nullopt}}});
  const auto cc = chunk_corpus(c, 8);
  EXPECT_EQ(cc.skipped_documents, 1u);
  EXPECT_EQ(cc.pieces.at("a").size(), 8u);
}

TEST(KnownAuth, SixteenPiecesSplitTwelveFour) {
  const auto cc = chunk_corpus(simple_corpus(3, 2, 400), 8);
  const auto s = split_known_auth(cc.pieces, 0.75, 9);
  std::set<std::string> tr, te;
  for (const auto& [a, l] : s.train) {
    EXPECT_EQ(l.size(), 12u);
    tr.insert(a);
  }
  for (const auto& [a, l] : s.test) {
    EXPECT_EQ(l.size(), 4u);
    std::set<int> chunks;
    for (const auto& p : l) chunks.insert(p.chunk_index);
    EXPECT_EQ(chunks.size(), 4u);
    te.insert(a);
  }
  EXPECT_EQ(tr, te);
  const auto s2 = split_known_auth(cc.pieces, 0.75, 9);
  EXPECT_EQ(s.train, s2.train);
  EXPECT_EQ(s.test, s2.test);
}

TEST(OneShot, NinetyNineAuthors) {
  const auto c = simple_corpus(99, 1, 16);
  const auto s = split_one_shot(c, 2.0 / 3.0, 5);
  EXPECT_EQ(s.train.authors.size(), 66u);
  EXPECT_EQ(s.test.authors.size(), 33u);
  std::set<std::string> tr;
  for (const auto& a : s.train.authors) tr.insert(a.author_id);
  for (const auto& a : s.test.authors) EXPECT_EQ(tr.count(a.author_id), 0u);
  const auto s2 = split_one_shot(c, 2.0 / 3.0, 5);
  for (std::size_t i = 0; i < s.train.authors.size(); ++i) {
    EXPECT_EQ(s.train.authors[i].author_id, s2.train.authors[i].author_id);
  }
}

TEST(GeneratePairs, HundredAuthorsGiveFourHundredPairs) {
  const auto cc = chunk_corpus(simple_corpus(100, 1, 80), 8);
  const auto pairs = generate_pairs(cc.pieces, 3);
  ASSERT_EQ(pairs.size(), 400u);
  std::size_t same = 0;
  std::set<std::string> used_same;
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    ids.insert(p.id);
    if (p.label == 1) {
      ++same;
      EXPECT_EQ(p.left.author_id, p.right.author_id);
      EXPECT_TRUE(used_same.insert(p.left.id()).second);
      EXPECT_TRUE(used_same.insert(p.right.id()).second);
      std::set<int> ch{p.left.chunk_index, p.right.chunk_index};
      EXPECT_EQ(ch, (std::set<int>{1, 2}));
    } else {
      EXPECT_NE(p.left.author_id, p.right.author_id);
      EXPECT_EQ(p.left.chunk_index, 3);
      EXPECT_EQ(p.right.chunk_index, 4);
    }
  }
  EXPECT_EQ(same, 200u);
  EXPECT_EQ(ids.size(), pairs.size());
}

TEST(GeneratePairs, DeterministicAndErrors) {
  const auto cc = chunk_corpus(simple_corpus(5, 2, 40), 8);
  const auto a = generate_pairs(cc.pieces, 1), b = generate_pairs(cc.pieces, 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].left, b[i].left);
    EXPECT_EQ(a[i].right, b[i].right);
  }
  const auto one = chunk_corpus(simple_corpus(1, 2, 40), 8);
  EXPECT_THROW(generate_pairs(one.pieces, 1), ConfigError);
}

TEST(HoldOut, LastTenPercent) {
  const auto cc = chunk_corpus(simple_corpus(10, 1, 40), 8);
  const auto pairs = generate_pairs(cc.pieces, 2);
  const auto s = hold_out_validation(pairs, 0.1);
  EXPECT_EQ(s.validation.size(), 4u);
  EXPECT_EQ(s.train.size(), 36u);
  EXPECT_EQ(s.validation.front().id, pairs[36].id);
}

Pan15Problem pan_problem() {
  Pan15Problem p;
  p.problem_id = "EN001";
  p.unknown = {"u", "unk", words(30, "u"), std::nullopt};
  p.known = {{"k1", "kn", words(12, "k"), std::nullopt},
             {"k2", "kn", words(21, "q"), std::nullopt},
             {"k3", "kn", words(9, "z"), std::nullopt}};
  p.same_author = true;
  return p;
}

TEST(Pan15, StrategyAWholeTexts) {
  const auto p = pan_problem();
  const auto pairs = pan15_pairs(p, Pan15Strategy::kA);
  ASSERT_EQ(pairs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pairs[i].left.text, p.unknown.text);
    EXPECT_EQ(pairs[i].right.text, p.known[i].text);
    EXPECT_EQ(pairs[i].label, 1);
  }
}

TEST(Pan15, StrategyBSharedLength) {
  const auto p = pan_problem();
  std::size_t shortest = utf8::length(p.unknown.text);
  for (const auto& k : p.known) shortest = std::min(shortest, utf8::length(k.text));
  for (const auto& pr : pan15_pairs(p, Pan15Strategy::kB)) {
    EXPECT_EQ(utf8::length(pr.left.text), shortest);
    EXPECT_EQ(utf8::length(pr.right.text), shortest);
  }
}

TEST(Pan15, StrategyCAlignedThirds) {
  auto p = pan_problem();
  p.known.resize(1);
  const auto pairs = pan15_pairs(p, Pan15Strategy::kC);
  ASSERT_EQ(pairs.size(), 3u);
  const auto u = chunk_document(p.unknown, 3);
  const auto k = chunk_document(p.known[0], 3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pairs[i].left.text, u[i].text);
    EXPECT_EQ(pairs[i].right.text, k[i].text);
  }
}

TEST(Pan15, StrategyDPermutesWithinProblem) {
  const auto p = pan_problem();
  const auto pairs = pan15_pairs(p, Pan15Strategy::kD, 4);
  ASSERT_EQ(pairs.size(), 9u);
  for (std::size_t g = 0; g < 3; ++g) {
    std::set<std::string> rights;
    for (std::size_t i = 0; i < 3; ++i) rights.insert(pairs[g * 3 + i].right.text);
    EXPECT_EQ(rights.size(), 3u);
  }
  Pan15Problem empty = p;
  empty.known.clear();
  EXPECT_THROW(pan15_pairs(empty, Pan15Strategy::kA), ConfigError);
}

TEST(NWay, WellFormed) {
  const auto cc = chunk_corpus(simple_corpus(3, 1, 16), 8);
  const auto tasks = build_nway_tasks(cc.pieces, 2, 500, 1);
  ASSERT_EQ(tasks.size(), 500u);
  for (const auto& t : tasks) {
    ASSERT_EQ(t.candidates.size(), 2u);
    EXPECT_EQ(t.candidates[t.positive_index].author_id, t.probe.author_id);
    EXPECT_NE(t.candidates[1 - t.positive_index].author_id, t.probe.author_id);
    EXPECT_NE(t.candidates[t.positive_index].id(), t.probe.id());
  }
  EXPECT_THROW(build_nway_tasks(cc.pieces, 10, 5, 1), ConfigError);
  const auto again = build_nway_tasks(cc.pieces, 2, 500, 1);
  for (std::size_t i = 0; i < tasks.size(); ++i) EXPECT_EQ(tasks[i].probe, again[i].probe);
}

TEST(Synth, DeterministicAndShaped) {
  SynthParams p;
  p.n_authors = 4;
  p.docs_per_author = 2;
  p.words_per_doc = 200;
  p.seed = 17;
  const auto a = synth_corpus(p), b = synth_corpus(p);
  ASSERT_EQ(a.authors.size(), 4u);
  for (std::size_t i = 0; i < a.authors.size(); ++i) {
    ASSERT_EQ(a.authors[i].documents.size(), 2u);
    for (std::size_t d = 0; d < 2; ++d) {
      EXPECT_EQ(a.authors[i].documents[d].text, b.authors[i].documents[d].text);
      EXPECT_EQ(count_words(a.authors[i].documents[d].text), 200u);
    }
  }
  p.signature_strength = 1.5;
  EXPECT_THROW(synth_corpus(p), ConfigError);
}

TEST(Synth, FullStrengthSignaturesDisjoint) {
  SynthParams p;
  p.n_authors = 2;
  p.docs_per_author = 1;
  p.words_per_doc = 300;
  p.signature_strength = 1.0;
  const auto s0 = synth_signature_symbols(p, 0), s1 = synth_signature_symbols(p, 1);
  const std::set<char32_t> sig0(s0.begin(), s0.end()), sig1(s1.begin(), s1.end());
  for (char32_t c : sig0) ASSERT_EQ(sig1.count(c), 0u);
  const auto c = synth_corpus(p);
  std::set<char32_t> h0, h1;
  for (char32_t ch : utf8::decode(c.authors[0].documents[0].text)) {
    if (!utf8::is_space(ch)) h0.insert(ch);
  }
  for (char32_t ch : utf8::decode(c.authors[1].documents[0].text)) {
    if (!utf8::is_space(ch)) h1.insert(ch);
  }
  for (char32_t ch : h0) {
    EXPECT_TRUE(sig0.count(ch));
    EXPECT_EQ(h1.count(ch), 0u);
  }
}

TEST(Synth, ZeroStrengthUsesBaseAlphabetOnly) {
  SynthParams p;
  p.n_authors = 3;
  p.signature_strength = 0.0;
  p.words_per_doc = 100;
  for (const auto& a : synth_corpus(p).authors) {
    for (char32_t ch : utf8::decode(a.documents[0].text)) {
      EXPECT_TRUE(utf8::is_space(ch) || (ch >= U'a' && ch <= U'z'));
    }
  }
}

TEST(Synth, WriteAndReloadAuthorDirs) {
  testing::TempDir dir;
  SynthParams p;
  p.n_authors = 3;
  p.words_per_doc = 50;
  const auto c = synth_corpus(p);
  write_author_dirs(c, dir / "corpus");
  const auto back = load_corpus(dir / "corpus", CorpusFormat::kAuthorDirs).corpus;
  ASSERT_EQ(back.authors.size(), 3u);
  EXPECT_EQ(back.authors[1].documents[1].text, c.authors[1].documents[1].text);
}

TEST(PairSetIo, RoundTripAndCorruption) {
  testing::TempDir dir;
  const auto cc = chunk_corpus(simple_corpus(4, 1, 16), 8);
  PairSet set;
  set.seed = 77;
  set.params = {{"k", 1}};
  set.pairs = generate_pairs(cc.pieces, 2);
  write_pair_set(set, dir / "p.json");
  const auto back = read_pair_set(dir / "p.json");
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.params, set.params);
  ASSERT_EQ(back.pairs.size(), set.pairs.size());
  for (std::size_t i = 0; i < back.pairs.size(); ++i) {
    EXPECT_EQ(back.pairs[i].id, set.pairs[i].id);
    EXPECT_EQ(back.pairs[i].left, set.pairs[i].left);
    EXPECT_EQ(back.pairs[i].label, set.pairs[i].label);
  }
  auto doc = nlohmann::json::parse(testing::slurp(dir / "p.json"));
  doc["pairs"][2].erase("label");
  testing::spit(dir / "bad.json", doc.dump());
  try {
    read_pair_set(dir / "bad.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos) << e.what();
  }
  doc = nlohmann::json::parse(testing::slurp(dir / "p.json"));
  doc["version"] = 99;
  testing::spit(dir / "v.json", doc.dump());
  EXPECT_THROW(read_pair_set(dir / "v.json"), VersionMismatch);
}

TEST(TaskSetIo, RoundTrip) {
  testing::TempDir dir;
  const auto cc = chunk_corpus(simple_corpus(6, 1, 16), 8);
  TaskSet ts;
  ts.seed = 3;
  ts.pool = cc.pieces;
  ts.runs.push_back({2, 0, 11, build_nway_tasks(cc.pieces, 2, 20, 11)});
  ts.runs.push_back({5, 1, 12, build_nway_tasks(cc.pieces, 5, 20, 12)});
  write_task_set(ts, dir / "t.json");
  const auto back = read_task_set(dir / "t.json");
  EXPECT_EQ(back.pool, ts.pool);
  ASSERT_EQ(back.runs.size(), 2u);
  EXPECT_EQ(back.runs[1].n, 5);
  EXPECT_EQ(back.runs[1].seed, 12u);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(back.runs[1].tasks[i].probe, ts.runs[1].tasks[i].probe);
    EXPECT_EQ(back.runs[1].tasks[i].candidates, ts.runs[1].tasks[i].candidates);
    EXPECT_EQ(back.runs[1].tasks[i].positive_index, ts.runs[1].tasks[i].positive_index);
  }
}

}  // namespace
}  // namespace authid::corpus
