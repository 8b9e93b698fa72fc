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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "authid/features/features.hpp"
#include "authid/numcore/graph.hpp"
#include "authid/numcore/params_io.hpp"

namespace authid::siamese {

using numcore::Graph;
using numcore::NodeId;

enum class Energy { kL1, kCos, kL2, kRuzicka };

Energy parse_energy(const std::string& name);
std::string_view energy_name(Energy energy) noexcept;
inline bool has_alpha(Energy e) noexcept { return e == Energy::kL1 || e == Energy::kL2; }

// How the cosine head turns cos(v1, v2) into a probability.
//   raw:    p = max(cos, 0)
//   affine: p = (cos + 1) / 2
enum class CosMapping { kRaw, kAffine };

CosMapping parse_cos_mapping(const std::string& name);
std::string_view cos_mapping_name(CosMapping m) noexcept;

struct SubNetConfig {
  std::size_t embed_dim = 300;
  std::vector<std::size_t> conv_channels = {350, 300, 250, 250};
  std::vector<std::size_t> kernel_widths = {1, 2, 3, 3};
  std::size_t dense_dim = 400;
  std::size_t vocab_size = 0;
  std::size_t max_len = 2500;

  // Throws ConfigError.
  void validate() const;
  friend bool operator==(const SubNetConfig&, const SubNetConfig&) = default;
};

struct ModelSpec {
  SubNetConfig subnet;
  Energy energy = Energy::kCos;
  CosMapping cos_mapping = CosMapping::kRaw;
};

// Parameter nodes of one sub-network.
struct SubNetParams {
  NodeId embed = -1;
  std::vector<NodeId> conv_w;
  std::vector<NodeId> conv_b;
  NodeId dense_w = -1;
  NodeId dense_b = -1;
};

template <typename T>
SubNetParams add_subnet_params(Graph<T>& g, const SubNetConfig& cfg);

// embedding -> conv/tanh x4 -> global max-pool -> dense/sigmoid
template <typename T>
NodeId add_tower(Graph<T>& g, const SubNetConfig& cfg, const SubNetParams& p, NodeId indices,
                 const std::string& prefix);

// Random initial values for every parameter of a graph built from cfg:
// Glorot-uniform weights, zero biases, U(-0.1, 0.1) embeddings and
// U(0, 0.1) for a head weight vector named "alpha".
template <typename T>
void init_params(Graph<T>& g, std::uint64_t seed);

// Twin towers reading one parameter store, joined by an energy head and a
// binary cross-entropy loss against the label input.
template <typename T>
struct SiameseGraph {
  Graph<T> g;
  SubNetParams params;
  NodeId alpha = -1;
  NodeId left = -1;
  NodeId right = -1;
  NodeId v1 = -1;
  NodeId v2 = -1;
  NodeId p = -1;
  NodeId label = -1;
  NodeId loss = -1;
};

template <typename T>
void build_siamese_graph(SiameseGraph<T>& out, const ModelSpec& spec);

// Energy heads on encoded vectors. Both return values in [0, 1].
template <typename T>
T energy_l1(std::span<const T> v1, std::span<const T> v2, std::span<const T> alpha);
template <typename T>
T energy_l2(std::span<const T> v1, std::span<const T> v2, std::span<const T> alpha);
// Throws NumericError on a zero vector.
template <typename T>
T energy_cos(std::span<const T> v1, std::span<const T> v2, CosMapping mapping = CosMapping::kRaw);
template <typename T>
T energy_ruzicka(std::span<const T> v1, std::span<const T> v2);

class SiameseModel {
 public:
  // Throws ConfigError if the vocabulary size disagrees with spec.subnet.
  SiameseModel(ModelSpec spec, std::shared_ptr<const features::Vocab> vocab, std::uint64_t seed);

  const ModelSpec& spec() const noexcept { return spec_; }
  const features::Vocab& vocab() const noexcept { return *vocab_; }
  std::shared_ptr<const features::Vocab> vocab_ptr() const noexcept { return vocab_; }

  features::IndexSequence encode_text(std::string_view text) const;

  // Sub-network output for one sequence of length max_len.
  std::vector<float> encode(const features::IndexSequence& seq);
  std::vector<float> encode(std::string_view text) { return encode(encode_text(text)); }

  float energy(std::span<const float> v1, std::span<const float> v2) const;
  float score(const features::IndexSequence& a, const features::IndexSequence& b);

  std::span<const float> alpha() const;

  // Draws fresh random parameters.
  void reinitialize(std::uint64_t seed);

  std::vector<numcore::ParamEntry> parameters() const;
  void set_parameters(const std::vector<numcore::ParamEntry>& params);

  SiameseGraph<float>& net() noexcept { return net_; }

 private:
  void check_sequence(const features::IndexSequence& seq) const;

  ModelSpec spec_;
  std::shared_ptr<const features::Vocab> vocab_;
  SiameseGraph<float> net_;
};

extern template struct SiameseGraph<float>;
extern template struct SiameseGraph<double>;

}  // namespace authid::siamese
