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

#include "authid/siamese/train.hpp"

#include <cmath>
#include <numeric>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/numcore/adam.hpp"

namespace authid::siamese {

void TrainConfig::validate() const {
  if (!(lr >= 0)) throw ConfigError("lr must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (!(restart_threshold > 0 && restart_threshold < 1)) throw ConfigError("restart_threshold must be in (0, 1)");
  if (restart_epoch < 1) throw ConfigError("restart_epoch must be >= 1");
  if (max_restarts < 0) throw ConfigError("max_restarts must be >= 0");
}

std::vector<EncodedPair> encode_pairs(const std::vector<corpus::PairExample>& pairs, const SiameseModel& model) {
  std::vector<EncodedPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.push_back({model.encode_text(p.left.text).indices, model.encode_text(p.right.text).indices, p.label});
  }
  return out;
}

double validation_accuracy(SiameseModel& model, const std::vector<EncodedPair>& pairs) {
  if (pairs.empty()) throw ConfigError("validation set is empty");
  std::size_t correct = 0;
  for (const auto& p : pairs) {
    features::IndexSequence a{p.left, 0}, b{p.right, 0};
    const bool same = model.score(a, b) > 0.5f;
    if (same == (p.label == 1)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

namespace {

double run_epoch(SiameseModel& model, const std::vector<EncodedPair>& data, std::vector<std::size_t>& order,
                 numcore::AdamState<float>& adam, const numcore::AdamConfig& acfg, std::size_t batch_size,
                 Rng& rng) {
  auto& net = model.net();
  auto& g = net.g;
  rng.shuffle(std::span(order));
  double total = 0;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    const float seed = 1.0f / static_cast<float>(end - start);
    g.zero_grad();
    for (std::size_t k = start; k < end; ++k) {
      const auto& ex = data[order[k]];
      const float label = static_cast<float>(ex.label);
      g.set_indices(net.left, ex.left);
      g.set_indices(net.right, ex.right);
      g.set_input(net.label, std::span(&label, 1));
      g.forward(net.loss);
      const float loss = g.value(net.loss)[0];
      if (!std::isfinite(loss)) throw NumericError("non-finite training loss");
      total += loss;
      g.backward(net.loss, seed);
    }
    numcore::adam_step(g, adam, acfg);
  }
  return total / static_cast<double>(order.size());
}

}  // namespace

TrainHistory train(SiameseModel& model, const std::vector<corpus::PairExample>& train_pairs,
                   const std::vector<corpus::PairExample>& val_pairs, const TrainConfig& cfg,
                   const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_pairs.empty()) throw ConfigError("no training pairs");
  if (val_pairs.empty()) throw ConfigError("no validation pairs");
  const auto data = encode_pairs(train_pairs, model);
  const auto val = encode_pairs(val_pairs, model);
  const numcore::AdamConfig acfg{cfg.lr};

  TrainHistory history;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0) model.reinitialize(derive_seed(cfg.seed, {0x4E57, static_cast<std::uint64_t>(attempt)}));
    numcore::AdamState<float> adam(model.net().g);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(cfg.seed, {0xE90C, static_cast<std::uint64_t>(attempt)}));

    history.epochs.clear();
    history.best_val_accuracy = -1;
    std::vector<numcore::ParamEntry> best;
    bool restart = false;
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
      EpochRecord rec;
      rec.epoch = epoch;
      rec.train_loss = run_epoch(model, data, order, adam, acfg, cfg.batch_size, rng);
      rec.val_accuracy = validation_accuracy(model, val);
      history.epochs.push_back(rec);
      if (on_epoch) on_epoch(attempt, rec);
      if (rec.val_accuracy > history.best_val_accuracy) {
        history.best_val_accuracy = rec.val_accuracy;
        history.selected_epoch = epoch;
        best = model.parameters();
      }
      if (epoch == cfg.restart_epoch && rec.val_accuracy < cfg.restart_threshold) {
        history.abandoned_accuracy.push_back(rec.val_accuracy);
        restart = true;
        break;
      }
    }
    if (!restart) {
      model.set_parameters(best);
      history.restart_count = attempt;
      return history;
    }
    if (attempt == cfg.max_restarts) {
      throw RestartBudgetExhausted("validation accuracy stayed below " + std::to_string(cfg.restart_threshold) +
                                   " after " + std::to_string(cfg.max_restarts) + " restarts");
    }
  }
}

}  // namespace authid::siamese
