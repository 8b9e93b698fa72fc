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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "authid/numcore/tensor.hpp"

namespace authid::numcore {

enum class OpKind {
  kInput,
  kIndexInput,
  kParam,
  kEmbedding,
  kConv1d,
  kTanh,
  kSigmoid,
  kMaxPool,
  kDense,
  kAbsDiff,
  kSquareDiff,
  kWeightedSum,
  kCosine,
  kRuzicka,
  kScaleShift,
  kBce,
  kSoftmaxXent,
  kSum,
};

std::string_view op_name(OpKind kind) noexcept;

using NodeId = std::int32_t;

inline constexpr double kBceClip = 1e-7;

// Static computation graph with reverse-mode differentiation.
//
// Nodes are appended in topological order by the builder methods, which
// infer output shapes and throw ShapeError naming the node on any mismatch.
// Sequences are laid out [length, channels]; vectors are [n]; scalars [1].
//
// Parameter gradients accumulate across backward calls until zero_grad().
// All other gradients are reset by each backward call.
template <typename T>
class Graph {
 public:
  struct Node {
    OpKind kind = OpKind::kInput;
    NodeId in[3] = {-1, -1, -1};
    std::string name;
    Tensor<T> out;
    std::vector<std::int32_t> ints;
    T c0 = 0;
    T c1 = 0;
    std::vector<T> saved;
  };

  NodeId input(Shape shape, std::string name = {});
  NodeId index_input(std::size_t length, std::string name = {});
  NodeId param(Shape shape, std::string name = {});

  // table [V, E], indices [L] -> [L, E]
  NodeId embedding(NodeId table, NodeId indices, std::string name = {});
  // x [L, Cin], w [Cout, K, Cin], b [Cout] -> [L - K + 1, Cout]
  NodeId conv1d(NodeId x, NodeId w, NodeId b, std::string name = {});
  NodeId tanh(NodeId x, std::string name = {});
  NodeId sigmoid(NodeId x, std::string name = {});
  // [L, C] -> [C], maximum over the sequence axis
  NodeId max_pool(NodeId x, std::string name = {});
  // x [D], w [O, D], b [O] -> [O]
  NodeId dense(NodeId x, NodeId w, NodeId b, std::string name = {});
  NodeId abs_diff(NodeId a, NodeId b, std::string name = {});
  NodeId square_diff(NodeId a, NodeId b, std::string name = {});
  // sum of x * w over all elements -> [1]
  NodeId weighted_sum(NodeId x, NodeId w, std::string name = {});
  // a, b [n] -> [1]; 0 when either is the zero vector
  NodeId cosine(NodeId a, NodeId b, std::string name = {});
  // sum min / sum max for nonnegative a, b [n] -> [1]; 0 when sum max is 0
  NodeId ruzicka(NodeId a, NodeId b, std::string name = {});
  NodeId scale_shift(NodeId x, T scale, T shift, std::string name = {});
  // p [1], label [1] -> [1]; p clipped to [kBceClip, 1 - kBceClip]
  NodeId bce(NodeId p, NodeId label, std::string name = {});
  // logits [C], target index_input [1] -> [1]
  NodeId softmax_xent(NodeId logits, NodeId target, std::string name = {});
  NodeId sum(NodeId x, std::string name = {});

  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const Shape& shape(NodeId id) const { return node(id).out.shape; }
  std::span<T> value(NodeId id) { return at(id).out.values; }
  std::span<const T> value(NodeId id) const { return node(id).out.values; }
  std::span<T> grad(NodeId id) { return at(id).out.grad; }
  std::span<const T> grad(NodeId id) const { return node(id).out.grad; }
  const std::vector<NodeId>& params() const noexcept { return params_; }
  // -1 when no node has that name.
  NodeId find(std::string_view name) const;
  // "node 7 (conv1d 'conv2')"
  std::string describe(NodeId id) const;

  void set_input(NodeId id, std::span<const T> values);
  void set_indices(NodeId id, std::span<const std::int32_t> indices);

  // Evaluates nodes 0..last (default: all) in order.
  void forward(NodeId last = -1);
  // Reverse pass from a scalar node; requires forward to have reached it.
  void backward(NodeId loss, T seed = T(1));
  void zero_grad();

 private:
  Node& at(NodeId id) { return nodes_.at(static_cast<std::size_t>(id)); }
  NodeId add(Node node);
  void check_id(NodeId id, const char* what) const;
  [[noreturn]] void fail(OpKind kind, const std::string& name, const std::string& msg) const;

  void forward_node(Node& n);
  void backward_node(Node& n);

  std::vector<Node> nodes_;
  std::vector<NodeId> params_;
  NodeId forwarded_ = -1;
};

extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace authid::numcore
