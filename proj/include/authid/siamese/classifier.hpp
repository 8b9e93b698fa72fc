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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "authid/corpus/corpus.hpp"
#include "authid/numcore/adam.hpp"
#include "authid/siamese/model.hpp"

namespace authid::siamese {

struct ClassifierTrainConfig {
  double lr = 0.0005;
  std::size_t batch_size = 25;
  int max_epochs = 150;
  std::uint64_t seed = 0;
};

// One sub-network followed by a dense layer over the author classes and a
// softmax.
class Classifier {
 public:
  Classifier(SubNetConfig cfg, std::shared_ptr<const features::Vocab> vocab, std::vector<std::string> authors,
             std::uint64_t seed);

  const std::vector<std::string>& authors() const noexcept { return authors_; }
  // -1 for an author outside the class set.
  int class_of(const std::string& author) const;

  // Class probabilities for one text.
  std::vector<float> predict(std::string_view text);
  std::vector<float> predict(const features::IndexSequence& seq);

  double accuracy(const std::vector<corpus::Piece>& pieces);

  // Mean loss over one pass in the given order.
  double train_epoch(const std::vector<features::IndexSequence>& seqs, const std::vector<int>& labels,
                     std::span<const std::size_t> order, std::size_t batch_size, double lr);

  std::vector<numcore::ParamEntry> parameters() const { return numcore::collect_params(g_); }
  void set_parameters(const std::vector<numcore::ParamEntry>& p) { numcore::assign_params(g_, p); }

  features::IndexSequence encode_text(std::string_view text) const;

 private:
  SubNetConfig cfg_;
  std::shared_ptr<const features::Vocab> vocab_;
  std::vector<std::string> authors_;
  std::map<std::string, int> class_index_;
  Graph<float> g_;
  NodeId input_ = -1;
  NodeId logits_ = -1;
  NodeId target_ = -1;
  NodeId loss_ = -1;
  numcore::AdamState<float> adam_;
};

struct ClassifierHistory {
  std::vector<double> train_loss;
  std::vector<double> val_accuracy;
  int selected_epoch = 0;
};

// Trains with softmax cross-entropy and keeps the epoch with the best
// accuracy on val (on train when val is empty). Throws ConfigError for a
// piece whose author is not in the class set.
Classifier train_classifier(const SubNetConfig& cfg, std::shared_ptr<const features::Vocab> vocab,
                            const std::vector<corpus::Piece>& train, const std::vector<corpus::Piece>& val,
                            const ClassifierTrainConfig& tcfg, ClassifierHistory* history = nullptr);

// Index of the candidate whose author has the highest probability, lowest
// index on ties. class_of maps a candidate to its entry in probs.
std::size_t choose_by_probability(std::span<const float> probs, std::span<const int> candidate_classes);

std::size_t classifier_nway(Classifier& classifier, const corpus::NWayTask& task);

}  // namespace authid::siamese
