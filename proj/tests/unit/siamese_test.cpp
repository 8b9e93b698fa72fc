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

#include <cmath>

#include "authid/common/error.hpp"
#include "authid/numcore/adam.hpp"
#include "authid/numcore/grad_check.hpp"
#include "authid/siamese/classifier.hpp"
#include "authid/siamese/model_io.hpp"
#include "authid/siamese/train.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

namespace authid::siamese {
namespace {

using testing::letters_vocab;
using testing::random_text;
using testing::tiny_subnet;

SiameseModel tiny_model(Energy e, std::uint64_t seed = 1, CosMapping m = CosMapping::kRaw) {
  auto v = letters_vocab();
  return SiameseModel({tiny_subnet(v->size()), e, m}, v, seed);
}

TEST(SubNet, DefaultOutputDimension) {
  SubNetConfig cfg;
  cfg.vocab_size = 40;
  EXPECT_NO_THROW(cfg.validate());
  SiameseGraph<float> net;
  build_siamese_graph(net, {cfg, Energy::kCos, CosMapping::kRaw});
  EXPECT_EQ(net.g.shape(net.v1), (numcore::Shape{400}));
  EXPECT_EQ(net.g.shape(net.v2), (numcore::Shape{400}));
}

TEST(SubNet, KernelWiderThanInputRejected) {
  auto cfg = tiny_subnet(10, 5);
  cfg.kernel_widths = {1, 2, 3, 6};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.kernel_widths = {1, 2, 3};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SubNet, SameSeedSameParameters) {
  auto a = tiny_model(Energy::kL1, 9), b = tiny_model(Energy::kL1, 9), c = tiny_model(Energy::kL1, 10);
  const auto pa = a.parameters(), pb = b.parameters(), pc = c.parameters();
  ASSERT_EQ(pa.size(), pb.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(pa[i].values, pb[i].values);
    any_diff |= pa[i].values != pc[i].values;
  }
  EXPECT_TRUE(any_diff);
  for (float x : a.alpha()) {
    EXPECT_GE(x, 0.0f);
    EXPECT_LE(x, 0.1f);
  }
}

TEST(Encode, DeterministicSigmoidRangeAndAllPad) {
  auto m = tiny_model(Energy::kCos);
  const auto a = m.encode("abc def"), b = m.encode("abc def");
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 5u);
  for (float x : a) {
    EXPECT_GT(x, 0.0f);
    EXPECT_LT(x, 1.0f);
  }
  const auto pad = m.encode("");
  for (float x : pad) EXPECT_TRUE(std::isfinite(x));
}

TEST(Energy, L1Values) {
  const std::vector<double> v1 = {1, 0}, v2 = {0, 1}, alpha = {1, 1};
  EXPECT_NEAR(energy_l1<double>(v1, v2, alpha), 0.8807970779778823, 1e-12);
  EXPECT_EQ(energy_l1<double>(v1, v1, alpha), 0.5);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(7), b(7), w(7);
    for (int k = 0; k < 7; ++k) {
      a[k] = rng.uniform01();
      b[k] = rng.uniform01();
      w[k] = rng.uniform(-1, 1);
    }
    EXPECT_EQ(energy_l1<double>(a, b, w), energy_l1<double>(b, a, w));
  }
}

TEST(Energy, CosineValues) {
  const std::vector<double> v = {0.3, 0.4}, neg = {-0.3, -0.4}, orth = {0.4, -0.3};
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, v), 1.0);
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, neg), 0.0);
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, neg, CosMapping::kAffine), 0.0);
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, orth, CosMapping::kAffine), 0.5);
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, orth, CosMapping::kRaw), 0.0);
  EXPECT_DOUBLE_EQ(energy_cos<double>(v, v, CosMapping::kAffine), 1.0);
  const std::vector<double> zero = {0, 0};
  EXPECT_THROW(energy_cos<double>(v, zero), NumericError);
}

TEST(Energy, RuzickaAndL2) {
  const std::vector<double> a = {1, 2}, b = {2, 1}, alpha = {1, 1};
  EXPECT_DOUBLE_EQ(energy_ruzicka<double>(a, b), 0.5);
  EXPECT_NEAR(energy_l2<double>(a, b, alpha), 1 / (1 + std::exp(-2.0)), 1e-15);
  EXPECT_EQ(energy_l2<double>(a, a, alpha), 0.5);
}

TEST(ScorePair, IdenticalInputsAndSymmetry) {
  auto l1 = tiny_model(Energy::kL1), cs = tiny_model(Energy::kCos);
  Rng rng(4);
  const auto a = l1.encode_text(random_text(rng, 30)), b = l1.encode_text(random_text(rng, 30));
  EXPECT_EQ(l1.score(a, a), 0.5f);
  EXPECT_EQ(cs.score(a, a), 1.0f);
  EXPECT_EQ(l1.score(a, b), l1.score(b, a));
  EXPECT_EQ(cs.score(a, b), cs.score(b, a));
}

TEST(WeightTying, TwinsShareOneStore) {
  auto m = tiny_model(Energy::kL1);
  auto& net = m.net();
  Rng rng(6);
  const auto seq = m.encode_text(random_text(rng, 20));
  auto twins_equal = [&] {
    net.g.set_indices(net.left, seq.indices);
    net.g.set_indices(net.right, seq.indices);
    const float label = 1;
    net.g.set_input(net.label, std::span(&label, 1));
    net.g.forward();
    const auto a = net.g.value(net.v1), b = net.g.value(net.v2);
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  };
  EXPECT_TRUE(twins_equal());
  // One store: the parameter list holds the sub-network exactly once.
  std::size_t embeds = 0;
  for (const auto& p : m.parameters()) embeds += p.name == "embed";
  EXPECT_EQ(embeds, 1u);
  const auto other = m.encode_text(random_text(rng, 20));
  net.g.set_indices(net.right, other.indices);
  net.g.forward();
  net.g.zero_grad();
  net.g.backward(net.loss);
  numcore::AdamState<float> st(net.g);
  numcore::adam_step(net.g, st, numcore::AdamConfig{0.05});
  EXPECT_TRUE(twins_equal());
}

TEST(EndToEnd, SiameseLossGradientDouble) {
  for (Energy e : {Energy::kL1, Energy::kCos, Energy::kL2}) {
    SiameseGraph<double> net;
    build_siamese_graph(net, {tiny_subnet(12, 10), e, CosMapping::kAffine});
    init_params(net.g, 3);
    Rng rng(5);
    std::vector<std::int32_t> l(10), r(10);
    for (auto& x : l) x = static_cast<std::int32_t>(rng.uniform_index(12));
    for (auto& x : r) x = static_cast<std::int32_t>(rng.uniform_index(12));
    net.g.set_indices(net.left, l);
    net.g.set_indices(net.right, r);
    const double label = 1;
    net.g.set_input(net.label, std::span(&label, 1));
    const double err = numcore::check_leaves(net.g, net.loss, net.g.params(), 12, 77);
    EXPECT_LE(err, 1e-3) << energy_name(e);
  }
}

std::vector<corpus::PairExample> synth_pairs(int authors, std::uint64_t seed) {
  const auto pieces = testing::synth_pieces(authors, 1, 120, 1.0, seed);
  return corpus::generate_pairs(pieces, seed);
}

TEST(Train, ZeroLearningRateKeepsParameters) {
  const auto pairs = synth_pairs(4, 1);
  auto vocab = std::make_shared<const features::Vocab>(
      features::build_vocab(testing::pair_texts(pairs), features::TokenLevel::kChar));
  SiameseModel m({tiny_subnet(vocab->size(), 40), Energy::kL1, CosMapping::kRaw}, vocab, 2);
  const auto before = m.parameters();
  TrainConfig cfg;
  cfg.lr = 0;
  cfg.max_epochs = 2;
  const auto h = train(m, pairs, pairs, cfg);
  EXPECT_EQ(h.epochs.size(), 2u);
  const auto after = m.parameters();
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(before[i].values, after[i].values);
}

TEST(Train, OverfitsTenSeparablePairs) {
  auto pairs = synth_pairs(6, 3);
  pairs.resize(10);
  auto vocab = std::make_shared<const features::Vocab>(
      features::build_vocab(testing::pair_texts(pairs), features::TokenLevel::kChar));
  auto sub = tiny_subnet(vocab->size(), 60);
  sub.embed_dim = 8;
  sub.conv_channels = {8, 8, 8, 8};
  sub.dense_dim = 16;
  SiameseModel m({sub, Energy::kCos, CosMapping::kRaw}, vocab, 4);
  TrainConfig cfg;
  cfg.lr = 0.01;
  cfg.batch_size = 5;
  cfg.max_epochs = 25;
  const auto h = train(m, pairs, pairs, cfg);
  EXPECT_LE(h.epochs.size(), 25u);
  EXPECT_GE(validation_accuracy(m, encode_pairs(pairs, m)), 0.9);
  EXPECT_GE(h.best_val_accuracy, 0.9);
}

TEST(Train, StuckModelRestartsAtEpochTen) {
  // All-different validation pairs with a frozen cosine head that calls
  // everything "same": accuracy 0 at every epoch.
  auto pairs = synth_pairs(4, 5);
  std::vector<corpus::PairExample> diff;
  for (const auto& p : pairs) {
    if (p.label == 0) diff.push_back(p);
  }
  auto vocab = std::make_shared<const features::Vocab>(
      features::build_vocab(testing::pair_texts(pairs), features::TokenLevel::kChar));
  SiameseModel m({tiny_subnet(vocab->size(), 30), Energy::kCos, CosMapping::kRaw}, vocab, 6);
  ASSERT_EQ(validation_accuracy(m, encode_pairs(diff, m)), 0.0);
  TrainConfig cfg;
  cfg.lr = 0;
  cfg.max_epochs = 12;
  cfg.max_restarts = 2;
  std::vector<std::pair<int, int>> seen;
  EXPECT_THROW(train(m, pairs, diff, cfg, [&](int a, const EpochRecord& r) { seen.emplace_back(a, r.epoch); }),
               RestartBudgetExhausted);
  ASSERT_EQ(seen.size(), 30u);
  EXPECT_EQ(seen[9], (std::pair<int, int>{0, 10}));
  EXPECT_EQ(seen[10], (std::pair<int, int>{1, 1}));
  EXPECT_EQ(seen.back(), (std::pair<int, int>{2, 10}));
}

TEST(Train, ConfigValidation) {
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.restart_threshold = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(ModelIo, RoundTripScoresExact) {
  testing::TempDir dir;
  auto m = tiny_model(Energy::kL1, 12);
  Rng rng(13);
  for (auto& p : m.net().g.value(m.net().alpha)) p = static_cast<float>(rng.uniform(-1, 1));
  save_model(m, dir / "m.bin");
  auto back = load_model(dir / "m.bin");
  EXPECT_EQ(back.vocab(), m.vocab());
  EXPECT_EQ(back.spec().subnet, m.spec().subnet);
  for (int i = 0; i < 100; ++i) {
    const auto a = m.encode_text(random_text(rng, 24)), b = m.encode_text(random_text(rng, 24));
    EXPECT_EQ(m.score(a, b), back.score(a, b));
  }
}

TEST(ModelIo, TruncatedAndVersionBumped) {
  testing::TempDir dir;
  auto m = tiny_model(Energy::kCos);
  save_model(m, dir / "m.bin");
  const auto full = testing::slurp(dir / "m.bin");
  testing::spit(dir / "cut.bin", full.substr(0, full.size() - 10));
  EXPECT_THROW(load_model(dir / "cut.bin"), ParseError);
  std::string bumped = full;
  const auto pos = bumped.find("\"model_version\":1");
  ASSERT_NE(pos, std::string::npos);
  bumped[pos + 16] = '2';
  testing::spit(dir / "v.bin", bumped);
  EXPECT_THROW(load_model(dir / "v.bin"), VersionMismatch);
  EXPECT_THROW(load_model(dir / "missing.bin"), IoError);
}

TEST(ModelIo, EnergyVariantsDifferOnlyInHead) {
  testing::TempDir dir;
  auto cs = tiny_model(Energy::kCos, 21), l1 = tiny_model(Energy::kL1, 21);
  save_model(cs, dir / "c.bin");
  save_model(l1, dir / "l.bin");
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return numcore::read_params(in, p.string());
  };
  const auto fc = read(dir / "c.bin"), fl = read(dir / "l.bin");
  auto mc = fc.meta, ml = fl.meta;
  EXPECT_EQ(mc["energy"], "cos");
  EXPECT_EQ(ml["energy"], "l1");
  mc.erase("energy");
  ml.erase("energy");
  EXPECT_EQ(mc, ml);
  ASSERT_EQ(fl.params.size(), fc.params.size() + 1);
  for (std::size_t i = 0; i < fc.params.size(); ++i) {
    EXPECT_EQ(fc.params[i].name, fl.params[i].name);
    EXPECT_EQ(fc.params[i].values, fl.params[i].values);
  }
  EXPECT_EQ(fl.params.back().name, "alpha");
}

TEST(Classifier, SeparableAuthorsAndSoftmax) {
  const auto pieces = testing::synth_pieces(2, 2, 400, 1.0, 8);
  std::vector<corpus::Piece> train, test;
  for (const auto& [a, list] : pieces) {
    for (std::size_t i = 0; i < list.size(); ++i) (i % 4 == 3 ? test : train).push_back(list[i]);
  }
  std::vector<std::string> texts;
  for (const auto& p : train) texts.push_back(p.text);
  auto vocab = std::make_shared<const features::Vocab>(features::build_vocab(texts, features::TokenLevel::kChar));
  ClassifierTrainConfig tcfg;
  tcfg.lr = 0.01;
  tcfg.batch_size = 4;
  tcfg.max_epochs = 15;
  ClassifierHistory h;
  auto clf = train_classifier(tiny_subnet(vocab->size(), 80), vocab, train, {}, tcfg, &h);
  EXPECT_GT(clf.accuracy(test), 0.9);
  EXPECT_EQ(h.train_loss.size(), 15u);
  const auto p = clf.predict(test[0].text);
  double s = 0;
  for (float x : p) s += x;
  EXPECT_NEAR(s, 1.0, 1e-6);
}

TEST(Classifier, ZeroLearningRateKeepsAccuracy) {
  const auto pieces = testing::synth_pieces(3, 1, 200, 1.0, 9);
  std::vector<corpus::Piece> train;
  for (const auto& [a, list] : pieces) train.insert(train.end(), list.begin(), list.end());
  std::vector<std::string> texts;
  for (const auto& p : train) texts.push_back(p.text);
  auto vocab = std::make_shared<const features::Vocab>(features::build_vocab(texts, features::TokenLevel::kChar));
  ClassifierTrainConfig tcfg;
  tcfg.lr = 0;
  tcfg.max_epochs = 3;
  ClassifierHistory h;
  train_classifier(tiny_subnet(vocab->size(), 40), vocab, train, {}, tcfg, &h);
  EXPECT_EQ(h.val_accuracy[0], h.val_accuracy[1]);
  EXPECT_EQ(h.val_accuracy[1], h.val_accuracy[2]);
}

TEST(Classifier, ChoiceRules) {
  const float probs[] = {0.1f, 0.6f, 0.3f};
  const int classes[] = {0, 2, 1};
  EXPECT_EQ(choose_by_probability(probs, classes), 2u);
  const float flat[] = {0.25f, 0.25f, 0.25f, 0.25f};
  const int all[] = {3, 1, 2};
  EXPECT_EQ(choose_by_probability(flat, all), 0u);
  const int one[] = {2};
  EXPECT_EQ(choose_by_probability(probs, one), 0u);
  const int bad[] = {7};
  EXPECT_THROW(choose_by_probability(probs, bad), ConfigError);
}

TEST(Classifier, NWaySingletonAndUnknownAuthor) {
  auto v = letters_vocab();
  Classifier clf(tiny_subnet(v->size()), v, {"x", "y"}, 1);
  corpus::NWayTask t;
  t.probe = {"x", "d", 0, 1, "abc"};
  t.candidates = {{"y", "d", 1, 1, "def"}};
  EXPECT_EQ(classifier_nway(clf, t), 0u);
  t.candidates.push_back({"z", "d", 2, 1, "ghi"});
  EXPECT_THROW(classifier_nway(clf, t), ConfigError);
}

}  // namespace
}  // namespace authid::siamese
