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

#include "authid/siamese/model_io.hpp"

#include <cstdio>
#include <fstream>

#include "authid/common/error.hpp"
#include "authid/numcore/params_io.hpp"

namespace authid::siamese {
using nlohmann::json;

namespace {

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

json subnet_to_json(const SubNetConfig& cfg) {
  return {{"embed_dim", cfg.embed_dim},
          {"conv_channels", cfg.conv_channels},
          {"kernel_widths", cfg.kernel_widths},
          {"dense_dim", cfg.dense_dim},
          {"vocab_size", cfg.vocab_size},
          {"max_len", cfg.max_len}};
}

SubNetConfig subnet_from_json(const json& j) {
  SubNetConfig cfg;
  cfg.embed_dim = j.at("embed_dim").get<std::size_t>();
  cfg.conv_channels = j.at("conv_channels").get<std::vector<std::size_t>>();
  cfg.kernel_widths = j.at("kernel_widths").get<std::vector<std::size_t>>();
  cfg.dense_dim = j.at("dense_dim").get<std::size_t>();
  cfg.vocab_size = j.at("vocab_size").get<std::size_t>();
  cfg.max_len = j.at("max_len").get<std::size_t>();
  return cfg;
}

void save_model(SiameseModel& model, const std::filesystem::path& path) {
  const auto& spec = model.spec();
  const auto& vocab = model.vocab();
  numcore::ParamFile file;
  file.meta = {{"model_format", "authid-model"},
               {"model_version", kModelFormatVersion},
               {"subnet", subnet_to_json(spec.subnet)},
               {"energy", std::string(energy_name(spec.energy))},
               {"cos_mapping", std::string(cos_mapping_name(spec.cos_mapping))},
               {"vocab",
                {{"level", std::string(features::token_level_name(vocab.level()))},
                 {"fingerprint", hex64(vocab.fingerprint())},
                 {"tokens", vocab.tokens()}}}};
  file.params = model.parameters();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  numcore::write_params(out, file);
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

SiameseModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  const numcore::ParamFile file = numcore::read_params(in, path.string());
  const json& meta = file.meta;
  if (meta.value("model_format", "") != "authid-model") throw ParseError(path.string() + ": not a model file");
  const int version = meta.value("model_version", -1);
  if (version != kModelFormatVersion) {
    throw VersionMismatch(path.string() + ": model format version " + std::to_string(version) + ", expected " +
                          std::to_string(kModelFormatVersion));
  }
  try {
    ModelSpec spec;
    spec.subnet = subnet_from_json(meta.at("subnet"));
    spec.energy = parse_energy(meta.at("energy").get<std::string>());
    spec.cos_mapping = parse_cos_mapping(meta.at("cos_mapping").get<std::string>());
    const json& jv = meta.at("vocab");
    auto vocab = std::make_shared<const features::Vocab>(features::parse_token_level(jv.at("level").get<std::string>()),
                                                         jv.at("tokens").get<std::vector<std::string>>());
    if (hex64(vocab->fingerprint()) != jv.at("fingerprint").get<std::string>()) {
      throw ParseError(path.string() + ": vocabulary fingerprint does not match its tokens");
    }
    SiameseModel model(spec, std::move(vocab), 0);
    model.set_parameters(file.params);
    return model;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": bad model header: " + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace authid::siamese
