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

#include "authid/cli/config.hpp"

#include "authid/common/error.hpp"
#include "authid/common/json_io.hpp"

namespace authid::cli {
using nlohmann::json;

namespace {

template <typename Config, typename F>
void for_each_field(Config& c, F&& f) {
  f("scenario", c.scenario);
  f("format", c.format);
  f("level", c.level);
  f("energy", c.energy);
  f("cos_mapping", c.cos_mapping);
  f("max_len", c.max_len);
  f("embed_dim", c.embed_dim);
  f("conv_channels", c.conv_channels);
  f("kernel_widths", c.kernel_widths);
  f("dense_dim", c.dense_dim);
  f("lr", c.lr);
  f("batch_size", c.batch_size);
  f("max_epochs", c.max_epochs);
  f("restart_threshold", c.restart_threshold);
  f("restart_epoch", c.restart_epoch);
  f("max_restarts", c.max_restarts);
  f("classifier_epochs", c.classifier_epochs);
  f("iterations", c.iterations);
  f("feature_fraction", c.feature_fraction);
  f("metric", c.metric);
  f("decision_threshold", c.decision_threshold);
  f("max_features", c.max_features);
  f("n_pieces", c.n_pieces);
  f("train_frac", c.train_frac);
  f("author_frac", c.author_frac);
  f("val_fraction", c.val_fraction);
  f("ns", c.ns);
  f("n_sets", c.n_sets);
  f("runs", c.runs);
  f("protocol", c.protocol);
  f("seed", c.seed);
  f("synth_authors", c.synth_authors);
  f("synth_docs", c.synth_docs);
  f("synth_words", c.synth_words);
  f("synth_strength", c.synth_strength);
  f("corpus", c.corpus);
  f("out", c.out);
  f("train", c.train);
  f("val", c.val);
  f("pairs", c.pairs);
  f("tasks", c.tasks);
  f("model", c.model);
  f("vocab", c.vocab);
  f("scores", c.scores);
  f("scores_out", c.scores_out);
}

}  // namespace

void RunConfig::validate() const {
  if (scenario != "known" && scenario != "oneshot") throw ConfigError("scenario must be known or oneshot");
  if (!format.empty()) corpus::parse_corpus_format(format);
  features::parse_token_level(level);
  siamese::parse_energy(energy);
  siamese::parse_cos_mapping(cos_mapping);
  koppel::parse_metric(metric);
  if (protocol != "nway" && protocol != "verification" && protocol != "both") {
    throw ConfigError("protocol must be nway, verification or both");
  }
  subnet(2);
  train_config().validate();
  imposters_config().validate();
  if (classifier_epochs < 1) throw ConfigError("classifier_epochs must be >= 1");
  if (max_features < 1) throw ConfigError("max_features must be >= 1");
  if (n_pieces < 1) throw ConfigError("n_pieces must be >= 1");
  if (!(train_frac > 0 && train_frac < 1)) throw ConfigError("train_frac must be in (0, 1)");
  if (!(author_frac > 0 && author_frac < 1)) throw ConfigError("author_frac must be in (0, 1)");
  if (!(val_fraction > 0 && val_fraction < 1)) throw ConfigError("val_fraction must be in (0, 1)");
  if (ns.empty()) throw ConfigError("ns must list at least one N");
  for (int n : ns) {
    if (n < 1) throw ConfigError("every N must be >= 1");
  }
  if (n_sets < 1 || runs < 1) throw ConfigError("n_sets and runs must be >= 1");
}

siamese::SubNetConfig RunConfig::subnet(std::size_t vocab_size) const {
  siamese::SubNetConfig s;
  s.embed_dim = embed_dim;
  s.conv_channels = conv_channels;
  s.kernel_widths = kernel_widths;
  s.dense_dim = dense_dim;
  s.vocab_size = vocab_size;
  s.max_len = max_len;
  s.validate();
  return s;
}

siamese::ModelSpec RunConfig::model_spec(std::size_t vocab_size) const {
  return {subnet(vocab_size), siamese::parse_energy(energy), siamese::parse_cos_mapping(cos_mapping)};
}

siamese::TrainConfig RunConfig::train_config() const {
  siamese::TrainConfig t;
  t.lr = lr;
  t.batch_size = batch_size;
  t.max_epochs = max_epochs;
  t.restart_threshold = restart_threshold;
  t.restart_epoch = restart_epoch;
  t.max_restarts = max_restarts;
  t.seed = seed;
  return t;
}

koppel::ImpostersConfig RunConfig::imposters_config() const {
  koppel::ImpostersConfig k;
  k.iterations = iterations;
  k.feature_fraction = feature_fraction;
  k.metric = koppel::parse_metric(metric);
  k.decision_threshold = decision_threshold;
  k.seed = seed;
  return k;
}

json config_to_json(const RunConfig& cfg) {
  json doc = json::object();
  for_each_field(cfg, [&](const char* name, const auto& field) { doc[name] = field; });
  return doc;
}

void apply_config_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for_each_field(cfg, [&](const char* name, auto& field) {
      if (key != name) return;
      known = true;
      try {
        field = value.get<std::remove_reference_t<decltype(field)>>();
      } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
      }
    });
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  RunConfig cfg;
  try {
    apply_config_json(cfg, read_json_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return cfg;
}

}  // namespace authid::cli
