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

#include "authid/siamese/model.hpp"

#include <algorithm>
#include <cmath>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/simd/kernels.hpp"

namespace authid::siamese {

Energy parse_energy(const std::string& name) {
  if (name == "l1") return Energy::kL1;
  if (name == "cos") return Energy::kCos;
  if (name == "l2") return Energy::kL2;
  if (name == "ruzicka") return Energy::kRuzicka;
  throw ConfigError("unknown energy '" + name + "' (expected l1, cos, l2 or ruzicka)");
}

std::string_view energy_name(Energy energy) noexcept {
  switch (energy) {
    case Energy::kL1: return "l1";
    case Energy::kCos: return "cos";
    case Energy::kL2: return "l2";
    case Energy::kRuzicka: return "ruzicka";
  }
  return "unknown";
}

CosMapping parse_cos_mapping(const std::string& name) {
  if (name == "raw") return CosMapping::kRaw;
  if (name == "affine") return CosMapping::kAffine;
  throw ConfigError("unknown cosine mapping '" + name + "' (expected raw or affine)");
}

std::string_view cos_mapping_name(CosMapping m) noexcept { return m == CosMapping::kRaw ? "raw" : "affine"; }

void SubNetConfig::validate() const {
  if (embed_dim < 1 || dense_dim < 1) throw ConfigError("embedding and dense sizes must be >= 1");
  if (conv_channels.size() != 4 || kernel_widths.size() != 4) {
    throw ConfigError("the sub-network has exactly 4 convolutional layers");
  }
  for (auto c : conv_channels) {
    if (c < 1) throw ConfigError("convolution channel counts must be >= 1");
  }
  std::size_t len = max_len;
  for (auto k : kernel_widths) {
    if (k < 1) throw ConfigError("kernel widths must be >= 1");
    if (k > len) {
      throw ConfigError("kernel width " + std::to_string(k) + " exceeds the sequence length " + std::to_string(len) +
                        " at that layer (max_len " + std::to_string(max_len) + ")");
    }
    len = len - k + 1;
  }
  if (vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
  if (max_len < features::kMinSequenceLength) throw ConfigError("max_len must be >= 3");
}

template <typename T>
SubNetParams add_subnet_params(Graph<T>& g, const SubNetConfig& cfg) {
  cfg.validate();
  SubNetParams p;
  p.embed = g.param({cfg.vocab_size, cfg.embed_dim}, "embed");
  std::size_t cin = cfg.embed_dim;
  for (std::size_t l = 0; l < 4; ++l) {
    const std::string tag = "conv" + std::to_string(l + 1);
    p.conv_w.push_back(g.param({cfg.conv_channels[l], cfg.kernel_widths[l], cin}, tag + ".w"));
    p.conv_b.push_back(g.param({cfg.conv_channels[l]}, tag + ".b"));
    cin = cfg.conv_channels[l];
  }
  p.dense_w = g.param({cfg.dense_dim, cin}, "dense.w");
  p.dense_b = g.param({cfg.dense_dim}, "dense.b");
  return p;
}

template <typename T>
NodeId add_tower(Graph<T>& g, const SubNetConfig& cfg, const SubNetParams& p, NodeId indices,
                 const std::string& prefix) {
  NodeId h = g.embedding(p.embed, indices, prefix + "embed");
  for (std::size_t l = 0; l < cfg.conv_channels.size(); ++l) {
    const std::string tag = prefix + "conv" + std::to_string(l + 1);
    h = g.conv1d(h, p.conv_w[l], p.conv_b[l], tag);
    h = g.tanh(h, tag + ".tanh");
  }
  h = g.max_pool(h, prefix + "pool");
  h = g.dense(h, p.dense_w, p.dense_b, prefix + "dense");
  return g.sigmoid(h, prefix + "v");
}

template <typename T>
void init_params(Graph<T>& g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x1417}));
  for (NodeId id : g.params()) {
    const auto& n = g.node(id);
    auto v = g.value(id);
    const auto& s = n.out.shape;
    const std::string& name = n.name;
    const bool is_bias = name.size() >= 2 && name.compare(name.size() - 2, 2, ".b") == 0;
    if (is_bias) {
      std::fill(v.begin(), v.end(), T(0));
    } else if (name == "alpha") {
      for (auto& x : v) x = static_cast<T>(rng.uniform(0.0, 0.1));
    } else if (name == "embed") {
      for (auto& x : v) x = static_cast<T>(rng.uniform(-0.1, 0.1));
    } else {
      // [out, in] or [out, k, in]
      const double receptive = s.size() == 3 ? static_cast<double>(s[1]) : 1.0;
      const double fan_in = receptive * static_cast<double>(s.back());
      const double fan_out = receptive * static_cast<double>(s[0]);
      const double limit = std::sqrt(6.0 / (fan_in + fan_out));
      for (auto& x : v) x = static_cast<T>(rng.uniform(-limit, limit));
    }
  }
}

template <typename T>
void build_siamese_graph(SiameseGraph<T>& out, const ModelSpec& spec) {
  auto& g = out.g;
  out.params = add_subnet_params(g, spec.subnet);
  if (has_alpha(spec.energy)) out.alpha = g.param({spec.subnet.dense_dim}, "alpha");
  out.left = g.index_input(spec.subnet.max_len, "left");
  out.v1 = add_tower(g, spec.subnet, out.params, out.left, "a.");
  out.right = g.index_input(spec.subnet.max_len, "right");
  out.v2 = add_tower(g, spec.subnet, out.params, out.right, "b.");
  switch (spec.energy) {
    case Energy::kL1:
      out.p = g.sigmoid(g.weighted_sum(g.abs_diff(out.v1, out.v2, "dist"), out.alpha, "z"), "p");
      break;
    case Energy::kL2:
      out.p = g.sigmoid(g.weighted_sum(g.square_diff(out.v1, out.v2, "dist"), out.alpha, "z"), "p");
      break;
    case Energy::kCos:
      out.p = g.cosine(out.v1, out.v2, "cos");
      if (spec.cos_mapping == CosMapping::kAffine) out.p = g.scale_shift(out.p, T(0.5), T(0.5), "p");
      break;
    case Energy::kRuzicka:
      out.p = g.ruzicka(out.v1, out.v2, "p");
      break;
  }
  out.label = g.input({1}, "label");
  out.loss = g.bce(out.p, out.label, "loss");
}

template <typename T>
T energy_l1(std::span<const T> v1, std::span<const T> v2, std::span<const T> alpha) {
  if (v1.size() != v2.size() || v1.size() != alpha.size()) throw ShapeError("energy_l1: dimension mismatch");
  std::vector<T> d(v1.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(v1[i] - v2[i]);
  const T z = simd::kernels<T>().dot(d.data(), alpha.data(), d.size());
  return z >= T(0) ? T(1) / (T(1) + std::exp(-z)) : std::exp(z) / (T(1) + std::exp(z));
}

template <typename T>
T energy_l2(std::span<const T> v1, std::span<const T> v2, std::span<const T> alpha) {
  if (v1.size() != v2.size() || v1.size() != alpha.size()) throw ShapeError("energy_l2: dimension mismatch");
  std::vector<T> d(v1.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const T e = v1[i] - v2[i];
    d[i] = e * e;
  }
  const T z = simd::kernels<T>().dot(d.data(), alpha.data(), d.size());
  return z >= T(0) ? T(1) / (T(1) + std::exp(-z)) : std::exp(z) / (T(1) + std::exp(z));
}

template <typename T>
T energy_cos(std::span<const T> v1, std::span<const T> v2, CosMapping mapping) {
  if (v1.size() != v2.size()) throw ShapeError("energy_cos: dimension mismatch");
  const auto& K = simd::kernels<T>();
  const T ab = K.dot(v1.data(), v2.data(), v1.size());
  const T aa = K.dot(v1.data(), v1.data(), v1.size());
  const T bb = K.dot(v2.data(), v2.data(), v2.size());
  if (!(aa > T(0) && bb > T(0))) throw NumericError("energy_cos: zero vector");
  const T c = std::clamp(ab / std::sqrt(aa * bb), T(-1), T(1));
  return mapping == CosMapping::kRaw ? std::max(c, T(0)) : T(0.5) * c + T(0.5);
}

template <typename T>
T energy_ruzicka(std::span<const T> v1, std::span<const T> v2) {
  if (v1.size() != v2.size()) throw ShapeError("energy_ruzicka: dimension mismatch");
  T lo = 0, hi = 0;
  for (std::size_t i = 0; i < v1.size(); ++i) {
    if (v1[i] < v2[i]) {
      lo += v1[i];
      hi += v2[i];
    } else {
      lo += v2[i];
      hi += v1[i];
    }
  }
  return hi > T(0) ? lo / hi : T(0);
}

SiameseModel::SiameseModel(ModelSpec spec, std::shared_ptr<const features::Vocab> vocab, std::uint64_t seed)
    : spec_(std::move(spec)), vocab_(std::move(vocab)) {
  if (!vocab_) throw ConfigError("a model needs a vocabulary");
  if (spec_.subnet.vocab_size != vocab_->size()) {
    throw ConfigError("model vocab_size " + std::to_string(spec_.subnet.vocab_size) + " does not match vocabulary of " +
                      std::to_string(vocab_->size()) + " entries");
  }
  build_siamese_graph(net_, spec_);
  init_params(net_.g, seed);
}

features::IndexSequence SiameseModel::encode_text(std::string_view text) const {
  return features::encode(text, *vocab_, spec_.subnet.max_len);
}

void SiameseModel::check_sequence(const features::IndexSequence& seq) const {
  if (seq.indices.size() != spec_.subnet.max_len) {
    throw ShapeError("sequence of length " + std::to_string(seq.indices.size()) + " for a model with max_len " +
                     std::to_string(spec_.subnet.max_len));
  }
  for (auto i : seq.indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= spec_.subnet.vocab_size) {
      throw ShapeError("token index " + std::to_string(i) + " outside the model vocabulary");
    }
  }
}

std::vector<float> SiameseModel::encode(const features::IndexSequence& seq) {
  check_sequence(seq);
  net_.g.set_indices(net_.left, seq.indices);
  net_.g.forward(net_.v1);
  const auto v = net_.g.value(net_.v1);
  return {v.begin(), v.end()};
}

std::span<const float> SiameseModel::alpha() const {
  if (net_.alpha < 0) return {};
  return net_.g.value(net_.alpha);
}

float SiameseModel::energy(std::span<const float> v1, std::span<const float> v2) const {
  switch (spec_.energy) {
    case Energy::kL1: return energy_l1<float>(v1, v2, alpha());
    case Energy::kL2: return energy_l2<float>(v1, v2, alpha());
    case Energy::kCos: return energy_cos<float>(v1, v2, spec_.cos_mapping);
    case Energy::kRuzicka: return energy_ruzicka<float>(v1, v2);
  }
  return 0.5f;
}

float SiameseModel::score(const features::IndexSequence& a, const features::IndexSequence& b) {
  const auto va = encode(a);
  const auto vb = encode(b);
  return energy(va, vb);
}

void SiameseModel::reinitialize(std::uint64_t seed) { init_params(net_.g, seed); }

std::vector<numcore::ParamEntry> SiameseModel::parameters() const { return numcore::collect_params(net_.g); }

void SiameseModel::set_parameters(const std::vector<numcore::ParamEntry>& params) {
  numcore::assign_params(net_.g, params);
}

template struct SiameseGraph<float>;
template struct SiameseGraph<double>;
template SubNetParams add_subnet_params<float>(Graph<float>&, const SubNetConfig&);
template SubNetParams add_subnet_params<double>(Graph<double>&, const SubNetConfig&);
template NodeId add_tower<float>(Graph<float>&, const SubNetConfig&, const SubNetParams&, NodeId, const std::string&);
template NodeId add_tower<double>(Graph<double>&, const SubNetConfig&, const SubNetParams&, NodeId,
                                  const std::string&);
template void init_params<float>(Graph<float>&, std::uint64_t);
template void init_params<double>(Graph<double>&, std::uint64_t);
template void build_siamese_graph<float>(SiameseGraph<float>&, const ModelSpec&);
template void build_siamese_graph<double>(SiameseGraph<double>&, const ModelSpec&);
template float energy_l1<float>(std::span<const float>, std::span<const float>, std::span<const float>);
template double energy_l1<double>(std::span<const double>, std::span<const double>, std::span<const double>);
template float energy_l2<float>(std::span<const float>, std::span<const float>, std::span<const float>);
template double energy_l2<double>(std::span<const double>, std::span<const double>, std::span<const double>);
template float energy_cos<float>(std::span<const float>, std::span<const float>, CosMapping);
template double energy_cos<double>(std::span<const double>, std::span<const double>, CosMapping);
template float energy_ruzicka<float>(std::span<const float>, std::span<const float>);
template double energy_ruzicka<double>(std::span<const double>, std::span<const double>);

}  // namespace authid::siamese
