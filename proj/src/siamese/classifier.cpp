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

#include "authid/siamese/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"

namespace authid::siamese {

Classifier::Classifier(SubNetConfig cfg, std::shared_ptr<const features::Vocab> vocab,
                       std::vector<std::string> authors, std::uint64_t seed)
    : cfg_(std::move(cfg)), vocab_(std::move(vocab)), authors_(std::move(authors)) {
  if (!vocab_ || vocab_->size() != cfg_.vocab_size) throw ConfigError("classifier vocabulary does not match vocab_size");
  if (authors_.empty()) throw ConfigError("a classifier needs at least one author class");
  for (std::size_t i = 0; i < authors_.size(); ++i) {
    if (!class_index_.emplace(authors_[i], static_cast<int>(i)).second) {
      throw ConfigError("duplicate author class '" + authors_[i] + "'");
    }
  }
  const SubNetParams p = add_subnet_params(g_, cfg_);
  const NodeId out_w = g_.param({authors_.size(), cfg_.dense_dim}, "out.w");
  const NodeId out_b = g_.param({authors_.size()}, "out.b");
  input_ = g_.index_input(cfg_.max_len, "text");
  const NodeId v = add_tower(g_, cfg_, p, input_, "");
  logits_ = g_.dense(v, out_w, out_b, "logits");
  target_ = g_.index_input(1, "target");
  loss_ = g_.softmax_xent(logits_, target_, "loss");
  init_params(g_, seed);
  adam_ = numcore::AdamState<float>(g_);
}

int Classifier::class_of(const std::string& author) const {
  auto it = class_index_.find(author);
  return it == class_index_.end() ? -1 : it->second;
}

features::IndexSequence Classifier::encode_text(std::string_view text) const {
  return features::encode(text, *vocab_, cfg_.max_len);
}

std::vector<float> Classifier::predict(std::string_view text) { return predict(encode_text(text)); }

std::vector<float> Classifier::predict(const features::IndexSequence& seq) {
  g_.set_indices(input_, seq.indices);
  g_.forward(logits_);
  const auto z = g_.value(logits_);
  std::vector<float> p(z.begin(), z.end());
  const float zmax = *std::max_element(p.begin(), p.end());
  float total = 0;
  for (auto& x : p) {
    x = std::exp(x - zmax);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

double Classifier::accuracy(const std::vector<corpus::Piece>& pieces) {
  if (pieces.empty()) throw ConfigError("accuracy over no pieces");
  std::size_t correct = 0;
  for (const auto& piece : pieces) {
    const auto p = predict(piece.text);
    const auto best = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    if (best == class_of(piece.author_id)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pieces.size());
}

double Classifier::train_epoch(const std::vector<features::IndexSequence>& seqs, const std::vector<int>& labels,
                               std::span<const std::size_t> order, std::size_t batch_size, double lr) {
  const numcore::AdamConfig acfg{lr};
  double total = 0;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    g_.zero_grad();
    for (std::size_t k = start; k < end; ++k) {
      const std::int32_t target = labels[order[k]];
      g_.set_indices(input_, seqs[order[k]].indices);
      g_.set_indices(target_, std::span(&target, 1));
      g_.forward(loss_);
      const float loss = g_.value(loss_)[0];
      if (!std::isfinite(loss)) throw NumericError("non-finite classifier loss");
      total += loss;
      g_.backward(loss_, 1.0f / static_cast<float>(end - start));
    }
    numcore::adam_step(g_, adam_, acfg);
  }
  return order.empty() ? 0.0 : total / static_cast<double>(order.size());
}

Classifier train_classifier(const SubNetConfig& cfg, std::shared_ptr<const features::Vocab> vocab,
                            const std::vector<corpus::Piece>& train, const std::vector<corpus::Piece>& val,
                            const ClassifierTrainConfig& tcfg, ClassifierHistory* history) {
  if (train.empty()) throw ConfigError("no training pieces");
  if (tcfg.max_epochs < 1 || tcfg.batch_size < 1 || !(tcfg.lr >= 0)) throw ConfigError("invalid classifier training config");
  std::set<std::string> names;
  for (const auto& p : train) names.insert(p.author_id);
  Classifier clf(cfg, std::move(vocab), std::vector<std::string>(names.begin(), names.end()), tcfg.seed);
  for (const auto& p : val) {
    if (clf.class_of(p.author_id) < 0) throw ConfigError("validation author '" + p.author_id + "' is not a class");
  }
  std::vector<features::IndexSequence> seqs;
  std::vector<int> labels;
  for (const auto& p : train) {
    seqs.push_back(clf.encode_text(p.text));
    labels.push_back(clf.class_of(p.author_id));
  }
  const auto& select_on = val.empty() ? train : val;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(tcfg.seed, {0xC1A5}));
  ClassifierHistory local;
  ClassifierHistory& h = history ? *history : local;
  double best = -1;
  std::vector<numcore::ParamEntry> best_params;
  for (int epoch = 1; epoch <= tcfg.max_epochs; ++epoch) {
    rng.shuffle(std::span(order));
    h.train_loss.push_back(clf.train_epoch(seqs, labels, order, tcfg.batch_size, tcfg.lr));
    h.val_accuracy.push_back(clf.accuracy(select_on));
    if (h.val_accuracy.back() > best) {
      best = h.val_accuracy.back();
      h.selected_epoch = epoch;
      best_params = clf.parameters();
    }
  }
  clf.set_parameters(best_params);
  return clf;
}

std::size_t choose_by_probability(std::span<const float> probs, std::span<const int> candidate_classes) {
  if (candidate_classes.empty()) throw ConfigError("no candidates");
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidate_classes.size(); ++i) {
    const int c = candidate_classes[i];
    if (c < 0 || static_cast<std::size_t>(c) >= probs.size()) {
      throw ConfigError("candidate " + std::to_string(i) + " has no classifier class");
    }
    if (probs[static_cast<std::size_t>(c)] > probs[static_cast<std::size_t>(candidate_classes[best])]) best = i;
  }
  return best;
}

std::size_t classifier_nway(Classifier& classifier, const corpus::NWayTask& task) {
  std::vector<int> classes;
  for (const auto& c : task.candidates) {
    const int k = classifier.class_of(c.author_id);
    if (k < 0) throw ConfigError("candidate author '" + c.author_id + "' is not a classifier class");
    classes.push_back(k);
  }
  const auto probs = classifier.predict(task.probe.text);
  return choose_by_probability(probs, classes);
}

}  // namespace authid::siamese
