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
#include <functional>
#include <vector>

#include "authid/corpus/corpus.hpp"
#include "authid/siamese/model.hpp"

namespace authid::siamese {

struct TrainConfig {
  double lr = 0.0005;
  std::size_t batch_size = 25;
  int max_epochs = 25;
  double restart_threshold = 0.55;
  int restart_epoch = 10;
  int max_restarts = 3;
  std::uint64_t seed = 0;

  // Throws ConfigError. The restart rule only applies when max_epochs
  // reaches restart_epoch.
  void validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0;
  double val_accuracy = 0;
};

struct TrainHistory {
  // Epochs of the attempt that was kept.
  std::vector<EpochRecord> epochs;
  int selected_epoch = 0;
  double best_val_accuracy = 0;
  int restart_count = 0;
  // Validation accuracy at the restart epoch of each abandoned attempt.
  std::vector<double> abandoned_accuracy;
};

struct EncodedPair {
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
  int label = 0;
};

std::vector<EncodedPair> encode_pairs(const std::vector<corpus::PairExample>& pairs, const SiameseModel& model);

// Verification accuracy of the model at threshold 0.5.
double validation_accuracy(SiameseModel& model, const std::vector<EncodedPair>& pairs);

// Called after every epoch with the attempt index (0 = first).
using EpochCallback = std::function<void(int attempt, const EpochRecord&)>;

// Minimises binary cross-entropy with Adam over shuffled mini-batches. If
// validation accuracy after restart_epoch is below restart_threshold the
// model is reinitialised and training starts over, at most max_restarts
// times, after which RestartBudgetExhausted is thrown. On return the model
// holds the parameters of the epoch with the best validation accuracy
// (earliest on ties).
TrainHistory train(SiameseModel& model, const std::vector<corpus::PairExample>& train_pairs,
                   const std::vector<corpus::PairExample>& val_pairs, const TrainConfig& cfg,
                   const EpochCallback& on_epoch = {});

}  // namespace authid::siamese
