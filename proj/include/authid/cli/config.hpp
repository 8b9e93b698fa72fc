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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "authid/koppel/imposters.hpp"
#include "authid/siamese/model.hpp"
#include "authid/siamese/train.hpp"

namespace authid::cli {

// Every setting a command can take. Defaults follow the reference setup;
// a JSON config file may set any field by name, and command-line flags
// override the file.
struct RunConfig {
  std::string scenario = "oneshot";
  std::string format;
  std::string level = "char";
  std::string energy = "cos";
  std::string cos_mapping = "raw";
  std::size_t max_len = 2500;
  std::size_t embed_dim = 300;
  std::vector<std::size_t> conv_channels = {350, 300, 250, 250};
  std::vector<std::size_t> kernel_widths = {1, 2, 3, 3};
  std::size_t dense_dim = 400;

  double lr = 0.0005;
  std::size_t batch_size = 25;
  int max_epochs = 25;
  double restart_threshold = 0.55;
  int restart_epoch = 10;
  int max_restarts = 3;
  int classifier_epochs = 150;

  int iterations = 100;
  double feature_fraction = 0.5;
  std::string metric = "ruzicka";
  double decision_threshold = 0.0;
  std::size_t max_features = 20000;

  int n_pieces = 8;
  double train_frac = 0.75;
  double author_frac = 2.0 / 3.0;
  double val_fraction = 0.1;
  std::vector<int> ns = {2, 5, 10};
  int n_sets = 500;
  int runs = 3;
  std::string protocol = "both";
  std::uint64_t seed = 0;

  int synth_authors = 200;
  int synth_docs = 2;
  int synth_words = 1000;
  double synth_strength = 0.8;

  std::string corpus;
  std::string out;
  std::string train;
  std::string val;
  std::string pairs;
  std::string tasks;
  std::string model;
  std::string vocab;
  std::string scores;
  std::string scores_out;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  siamese::SubNetConfig subnet(std::size_t vocab_size) const;
  siamese::ModelSpec model_spec(std::size_t vocab_size) const;
  siamese::TrainConfig train_config() const;
  koppel::ImpostersConfig imposters_config() const;
};

nlohmann::json config_to_json(const RunConfig& cfg);
// Unknown keys and wrongly typed values are ConfigErrors.
void apply_config_json(RunConfig& cfg, const nlohmann::json& doc);
RunConfig load_config_file(const std::filesystem::path& path);

}  // namespace authid::cli
