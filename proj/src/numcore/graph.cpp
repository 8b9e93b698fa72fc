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

#include "authid/numcore/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "authid/common/error.hpp"
#include "authid/simd/kernels.hpp"

namespace authid::numcore {

std::size_t shape_size(const Shape& shape) noexcept {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream ss;
  ss << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) ss << (i ? ", " : "") << shape[i];
  ss << ']';
  return ss.str();
}

std::string_view op_name(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::kInput: return "input";
    case OpKind::kIndexInput: return "index_input";
    case OpKind::kParam: return "param";
    case OpKind::kEmbedding: return "embedding";
    case OpKind::kConv1d: return "conv1d";
    case OpKind::kTanh: return "tanh";
    case OpKind::kSigmoid: return "sigmoid";
    case OpKind::kMaxPool: return "max_pool";
    case OpKind::kDense: return "dense";
    case OpKind::kAbsDiff: return "abs_diff";
    case OpKind::kSquareDiff: return "square_diff";
    case OpKind::kWeightedSum: return "weighted_sum";
    case OpKind::kCosine: return "cosine";
    case OpKind::kRuzicka: return "ruzicka";
    case OpKind::kScaleShift: return "scale_shift";
    case OpKind::kBce: return "bce";
    case OpKind::kSoftmaxXent: return "softmax_xent";
    case OpKind::kSum: return "sum";
  }
  return "unknown";
}

namespace {

template <typename T>
T sigmoid_of(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

}  // namespace

template <typename T>
void Graph<T>::fail(OpKind kind, const std::string& name, const std::string& msg) const {
  std::string who = "node " + std::to_string(nodes_.size()) + " (" + std::string(op_name(kind));
  if (!name.empty()) who += " '" + name + "'";
  throw ShapeError(who + "): " + msg);
}

template <typename T>
void Graph<T>::check_id(NodeId id, const char* what) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw ShapeError(std::string("unknown ") + what + " node id " + std::to_string(id));
  }
}

template <typename T>
std::string Graph<T>::describe(NodeId id) const {
  const Node& n = node(id);
  std::string s = "node " + std::to_string(id) + " (" + std::string(op_name(n.kind));
  if (!n.name.empty()) s += " '" + n.name + "'";
  return s + ")";
}

template <typename T>
NodeId Graph<T>::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return static_cast<NodeId>(i);
  }
  return -1;
}

template <typename T>
NodeId Graph<T>::add(Node node) {
  for (NodeId in : node.in) {
    if (in >= 0) check_id(in, "input");
  }
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

template <typename T>
NodeId Graph<T>::input(Shape shape, std::string name) {
  if (shape.empty() || shape_size(shape) == 0) fail(OpKind::kInput, name, "empty shape");
  Node n;
  n.kind = OpKind::kInput;
  n.name = std::move(name);
  n.out = Tensor<T>(std::move(shape));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::index_input(std::size_t length, std::string name) {
  if (length == 0) fail(OpKind::kIndexInput, name, "empty index sequence");
  Node n;
  n.kind = OpKind::kIndexInput;
  n.name = std::move(name);
  n.out = Tensor<T>({length});
  n.ints.assign(length, 0);
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::param(Shape shape, std::string name) {
  if (shape.empty() || shape_size(shape) == 0) fail(OpKind::kParam, name, "empty shape");
  Node n;
  n.kind = OpKind::kParam;
  n.name = std::move(name);
  n.out = Tensor<T>(std::move(shape));
  const NodeId id = add(std::move(n));
  params_.push_back(id);
  return id;
}

template <typename T>
NodeId Graph<T>::embedding(NodeId table, NodeId indices, std::string name) {
  check_id(table, "table");
  check_id(indices, "indices");
  const Shape& ts = shape(table);
  if (ts.size() != 2) fail(OpKind::kEmbedding, name, "table must be 2-D, got " + shape_str(ts));
  if (node(indices).kind != OpKind::kIndexInput) fail(OpKind::kEmbedding, name, "indices must be an index input");
  Node n;
  n.kind = OpKind::kEmbedding;
  n.in[0] = table;
  n.in[1] = indices;
  n.name = std::move(name);
  n.out = Tensor<T>({shape(indices)[0], ts[1]});
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::conv1d(NodeId x, NodeId w, NodeId b, std::string name) {
  check_id(x, "input");
  check_id(w, "weight");
  check_id(b, "bias");
  const Shape& xs = shape(x);
  const Shape& ws = shape(w);
  const Shape& bs = shape(b);
  if (xs.size() != 2) fail(OpKind::kConv1d, name, "input must be [L, C], got " + shape_str(xs));
  if (ws.size() != 3) fail(OpKind::kConv1d, name, "weight must be [Cout, K, Cin], got " + shape_str(ws));
  if (ws[2] != xs[1]) {
    fail(OpKind::kConv1d, name, "weight " + shape_str(ws) + " does not match input channels of " + shape_str(xs));
  }
  if (bs != Shape{ws[0]}) fail(OpKind::kConv1d, name, "bias must be [" + std::to_string(ws[0]) + "]");
  if (ws[1] > xs[0]) {
    fail(OpKind::kConv1d, name, "kernel width " + std::to_string(ws[1]) + " exceeds sequence length " +
                                    std::to_string(xs[0]));
  }
  Node n;
  n.kind = OpKind::kConv1d;
  n.in[0] = x;
  n.in[1] = w;
  n.in[2] = b;
  n.name = std::move(name);
  n.out = Tensor<T>({xs[0] - ws[1] + 1, ws[0]});
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::tanh(NodeId x, std::string name) {
  check_id(x, "input");
  Node n;
  n.kind = OpKind::kTanh;
  n.in[0] = x;
  n.name = std::move(name);
  n.out = Tensor<T>(shape(x));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::sigmoid(NodeId x, std::string name) {
  check_id(x, "input");
  Node n;
  n.kind = OpKind::kSigmoid;
  n.in[0] = x;
  n.name = std::move(name);
  n.out = Tensor<T>(shape(x));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::max_pool(NodeId x, std::string name) {
  check_id(x, "input");
  const Shape& xs = shape(x);
  if (xs.size() != 2) fail(OpKind::kMaxPool, name, "input must be [L, C], got " + shape_str(xs));
  Node n;
  n.kind = OpKind::kMaxPool;
  n.in[0] = x;
  n.name = std::move(name);
  n.out = Tensor<T>({xs[1]});
  n.ints.assign(xs[1], 0);
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::dense(NodeId x, NodeId w, NodeId b, std::string name) {
  check_id(x, "input");
  check_id(w, "weight");
  check_id(b, "bias");
  const Shape& xs = shape(x);
  const Shape& ws = shape(w);
  if (xs.size() != 1) fail(OpKind::kDense, name, "input must be a vector, got " + shape_str(xs));
  if (ws.size() != 2 || ws[1] != xs[0]) {
    fail(OpKind::kDense, name, "weight " + shape_str(ws) + " does not match input " + shape_str(xs));
  }
  if (shape(b) != Shape{ws[0]}) fail(OpKind::kDense, name, "bias must be [" + std::to_string(ws[0]) + "]");
  Node n;
  n.kind = OpKind::kDense;
  n.in[0] = x;
  n.in[1] = w;
  n.in[2] = b;
  n.name = std::move(name);
  n.out = Tensor<T>({ws[0]});
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::abs_diff(NodeId a, NodeId b, std::string name) {
  check_id(a, "input");
  check_id(b, "input");
  if (shape(a) != shape(b)) fail(OpKind::kAbsDiff, name, shape_str(shape(a)) + " vs " + shape_str(shape(b)));
  Node n;
  n.kind = OpKind::kAbsDiff;
  n.in[0] = a;
  n.in[1] = b;
  n.name = std::move(name);
  n.out = Tensor<T>(shape(a));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::square_diff(NodeId a, NodeId b, std::string name) {
  check_id(a, "input");
  check_id(b, "input");
  if (shape(a) != shape(b)) fail(OpKind::kSquareDiff, name, shape_str(shape(a)) + " vs " + shape_str(shape(b)));
  Node n;
  n.kind = OpKind::kSquareDiff;
  n.in[0] = a;
  n.in[1] = b;
  n.name = std::move(name);
  n.out = Tensor<T>(shape(a));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::weighted_sum(NodeId x, NodeId w, std::string name) {
  check_id(x, "input");
  check_id(w, "weight");
  if (shape(x) != shape(w)) fail(OpKind::kWeightedSum, name, shape_str(shape(x)) + " vs " + shape_str(shape(w)));
  Node n;
  n.kind = OpKind::kWeightedSum;
  n.in[0] = x;
  n.in[1] = w;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::cosine(NodeId a, NodeId b, std::string name) {
  check_id(a, "input");
  check_id(b, "input");
  if (shape(a).size() != 1 || shape(a) != shape(b)) {
    fail(OpKind::kCosine, name, "need two equal vectors, got " + shape_str(shape(a)) + " and " + shape_str(shape(b)));
  }
  Node n;
  n.kind = OpKind::kCosine;
  n.in[0] = a;
  n.in[1] = b;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  n.saved.assign(3, T(0));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::ruzicka(NodeId a, NodeId b, std::string name) {
  check_id(a, "input");
  check_id(b, "input");
  if (shape(a).size() != 1 || shape(a) != shape(b)) {
    fail(OpKind::kRuzicka, name, "need two equal vectors, got " + shape_str(shape(a)) + " and " + shape_str(shape(b)));
  }
  Node n;
  n.kind = OpKind::kRuzicka;
  n.in[0] = a;
  n.in[1] = b;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  n.saved.assign(2, T(0));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::scale_shift(NodeId x, T scale, T shift, std::string name) {
  check_id(x, "input");
  Node n;
  n.kind = OpKind::kScaleShift;
  n.in[0] = x;
  n.c0 = scale;
  n.c1 = shift;
  n.name = std::move(name);
  n.out = Tensor<T>(shape(x));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::bce(NodeId p, NodeId label, std::string name) {
  check_id(p, "probability");
  check_id(label, "label");
  if (shape(p) != Shape{1} || shape(label) != Shape{1}) fail(OpKind::kBce, name, "p and label must be scalars");
  Node n;
  n.kind = OpKind::kBce;
  n.in[0] = p;
  n.in[1] = label;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::softmax_xent(NodeId logits, NodeId target, std::string name) {
  check_id(logits, "logits");
  check_id(target, "target");
  if (shape(logits).size() != 1) fail(OpKind::kSoftmaxXent, name, "logits must be a vector");
  if (node(target).kind != OpKind::kIndexInput || shape(target) != Shape{1}) {
    fail(OpKind::kSoftmaxXent, name, "target must be a length-1 index input");
  }
  Node n;
  n.kind = OpKind::kSoftmaxXent;
  n.in[0] = logits;
  n.in[1] = target;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  n.saved.assign(shape(logits)[0], T(0));
  return add(std::move(n));
}

template <typename T>
NodeId Graph<T>::sum(NodeId x, std::string name) {
  check_id(x, "input");
  Node n;
  n.kind = OpKind::kSum;
  n.in[0] = x;
  n.name = std::move(name);
  n.out = Tensor<T>({1});
  return add(std::move(n));
}

template <typename T>
void Graph<T>::set_input(NodeId id, std::span<const T> values) {
  check_id(id, "input");
  Node& n = at(id);
  if (n.kind != OpKind::kInput && n.kind != OpKind::kParam) {
    throw ShapeError(describe(id) + ": not an input");
  }
  if (values.size() != n.out.size()) {
    throw ShapeError(describe(id) + ": expected " + std::to_string(n.out.size()) + " values, got " +
                     std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), n.out.values.begin());
  forwarded_ = std::min(forwarded_, id);
}

template <typename T>
void Graph<T>::set_indices(NodeId id, std::span<const std::int32_t> indices) {
  check_id(id, "index input");
  Node& n = at(id);
  if (n.kind != OpKind::kIndexInput) throw ShapeError(describe(id) + ": not an index input");
  if (indices.size() != n.ints.size()) {
    throw ShapeError(describe(id) + ": expected " + std::to_string(n.ints.size()) + " indices, got " +
                     std::to_string(indices.size()));
  }
  std::copy(indices.begin(), indices.end(), n.ints.begin());
  for (std::size_t i = 0; i < indices.size(); ++i) n.out.values[i] = static_cast<T>(indices[i]);
  forwarded_ = std::min(forwarded_, id);
}

template <typename T>
void Graph<T>::forward(NodeId last) {
  if (nodes_.empty()) return;
  if (last < 0) last = static_cast<NodeId>(nodes_.size() - 1);
  check_id(last, "target");
  for (NodeId i = 0; i <= last; ++i) forward_node(at(i));
  forwarded_ = std::max(forwarded_, last);
}

template <typename T>
void Graph<T>::forward_node(Node& n) {
  const auto& K = simd::kernels<T>();
  T* y = n.out.values.data();
  auto in_val = [&](int k) -> std::vector<T>& { return at(n.in[k]).out.values; };
  switch (n.kind) {
    case OpKind::kInput:
    case OpKind::kIndexInput:
    case OpKind::kParam:
      return;
    case OpKind::kEmbedding: {
      const Node& table = node(n.in[0]);
      const Node& idx = node(n.in[1]);
      const std::size_t rows = table.out.shape[0];
      const std::size_t e = table.out.shape[1];
      for (std::size_t t = 0; t < idx.ints.size(); ++t) {
        const auto r = idx.ints[t];
        if (r < 0 || static_cast<std::size_t>(r) >= rows) {
          throw ShapeError(describe(static_cast<NodeId>(&n - nodes_.data())) + ": index " + std::to_string(r) +
                           " outside table of " + std::to_string(rows) + " rows");
        }
        std::copy_n(table.out.values.data() + static_cast<std::size_t>(r) * e, e, y + t * e);
      }
      return;
    }
    case OpKind::kConv1d: {
      const Shape& xs = shape(n.in[0]);
      const Shape& ws = shape(n.in[1]);
      const std::size_t lout = n.out.shape[0];
      const std::size_t cin = xs[1];
      const std::size_t cout = ws[0];
      const std::size_t win = ws[1] * cin;
      K.gemm_nt(lout, cout, win, in_val(0).data(), cin, in_val(1).data(), win, in_val(2).data(), y, cout);
      return;
    }
    case OpKind::kTanh: {
      const auto& x = in_val(0);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
      return;
    }
    case OpKind::kSigmoid: {
      const auto& x = in_val(0);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = sigmoid_of(x[i]);
      return;
    }
    case OpKind::kMaxPool: {
      const Shape& xs = shape(n.in[0]);
      const T* x = in_val(0).data();
      const std::size_t len = xs[0];
      const std::size_t c = xs[1];
      std::copy_n(x, c, y);
      std::fill(n.ints.begin(), n.ints.end(), 0);
      for (std::size_t t = 1; t < len; ++t) {
        const T* row = x + t * c;
        for (std::size_t j = 0; j < c; ++j) {
          if (row[j] > y[j]) {
            y[j] = row[j];
            n.ints[j] = static_cast<std::int32_t>(t);
          }
        }
      }
      return;
    }
    case OpKind::kDense: {
      const std::size_t d = shape(n.in[0])[0];
      const std::size_t o = n.out.shape[0];
      K.gemm_nt(1, o, d, in_val(0).data(), d, in_val(1).data(), d, in_val(2).data(), y, o);
      return;
    }
    case OpKind::kAbsDiff: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      for (std::size_t i = 0; i < a.size(); ++i) y[i] = std::abs(a[i] - b[i]);
      return;
    }
    case OpKind::kSquareDiff: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const T d = a[i] - b[i];
        y[i] = d * d;
      }
      return;
    }
    case OpKind::kWeightedSum: {
      const auto& x = in_val(0);
      y[0] = K.dot(x.data(), in_val(1).data(), x.size());
      return;
    }
    case OpKind::kCosine: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      const T ab = K.dot(a.data(), b.data(), a.size());
      const T aa = K.dot(a.data(), a.data(), a.size());
      const T bb = K.dot(b.data(), b.data(), b.size());
      n.saved[0] = ab;
      n.saved[1] = aa;
      n.saved[2] = bb;
      y[0] = (aa > T(0) && bb > T(0)) ? ab / std::sqrt(aa * bb) : T(0);
      return;
    }
    case OpKind::kRuzicka: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      T lo = 0, hi = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
          lo += a[i];
          hi += b[i];
        } else {
          lo += b[i];
          hi += a[i];
        }
      }
      n.saved[0] = lo;
      n.saved[1] = hi;
      y[0] = hi > T(0) ? lo / hi : T(0);
      return;
    }
    case OpKind::kScaleShift: {
      const auto& x = in_val(0);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = n.c0 * x[i] + n.c1;
      return;
    }
    case OpKind::kBce: {
      const T p = std::clamp(in_val(0)[0], T(kBceClip), T(1) - T(kBceClip));
      const T t = in_val(1)[0];
      y[0] = -(t * std::log(p) + (T(1) - t) * std::log(T(1) - p));
      return;
    }
    case OpKind::kSoftmaxXent: {
      const auto& z = in_val(0);
      const auto target = node(n.in[1]).ints[0];
      if (target < 0 || static_cast<std::size_t>(target) >= z.size()) {
        throw ShapeError(describe(static_cast<NodeId>(&n - nodes_.data())) + ": target class " +
                         std::to_string(target) + " outside " + std::to_string(z.size()) + " classes");
      }
      const T zmax = *std::max_element(z.begin(), z.end());
      T total = 0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        n.saved[i] = std::exp(z[i] - zmax);
        total += n.saved[i];
      }
      for (auto& p : n.saved) p /= total;
      y[0] = zmax + std::log(total) - z[static_cast<std::size_t>(target)];
      return;
    }
    case OpKind::kSum: {
      const auto& x = in_val(0);
      T s = 0;
      for (T v : x) s += v;
      y[0] = s;
      return;
    }
  }
}

template <typename T>
void Graph<T>::backward(NodeId loss, T seed) {
  check_id(loss, "loss");
  if (forwarded_ < loss) throw Error("backward on " + describe(loss) + " before forward reached it");
  if (node(loss).out.size() != 1) throw ShapeError(describe(loss) + ": loss must be a scalar");
  for (NodeId i = 0; i <= loss; ++i) {
    Node& n = at(i);
    if (n.kind != OpKind::kParam) std::fill(n.out.grad.begin(), n.out.grad.end(), T(0));
  }
  at(loss).out.grad[0] = seed;
  for (NodeId i = loss; i >= 0; --i) backward_node(at(i));
}

template <typename T>
void Graph<T>::backward_node(Node& n) {
  const auto& K = simd::kernels<T>();
  const T* dy = n.out.grad.data();
  const T* y = n.out.values.data();
  auto in_val = [&](int k) -> std::vector<T>& { return at(n.in[k]).out.values; };
  auto in_grad = [&](int k) -> std::vector<T>& { return at(n.in[k]).out.grad; };
  switch (n.kind) {
    case OpKind::kInput:
    case OpKind::kIndexInput:
    case OpKind::kParam:
      return;
    case OpKind::kEmbedding: {
      const Node& idx = node(n.in[1]);
      auto& dt = in_grad(0);
      const std::size_t e = n.out.shape[1];
      for (std::size_t t = 0; t < idx.ints.size(); ++t) {
        K.axpy(T(1), dy + t * e, dt.data() + static_cast<std::size_t>(idx.ints[t]) * e, e);
      }
      return;
    }
    case OpKind::kConv1d: {
      const Shape& xs = shape(n.in[0]);
      const Shape& ws = shape(n.in[1]);
      const std::size_t lout = n.out.shape[0];
      const std::size_t cin = xs[1];
      const std::size_t cout = ws[0];
      const std::size_t win = ws[1] * cin;
      K.gemm_nn_acc(lout, cout, win, dy, cout, in_val(1).data(), win, in_grad(0).data(), cin);
      K.gemm_tn_acc(lout, cout, win, dy, cout, in_val(0).data(), cin, in_grad(1).data(), win);
      auto& db = in_grad(2);
      for (std::size_t t = 0; t < lout; ++t) K.axpy(T(1), dy + t * cout, db.data(), cout);
      return;
    }
    case OpKind::kTanh: {
      auto& dx = in_grad(0);
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += dy[i] * (T(1) - y[i] * y[i]);
      return;
    }
    case OpKind::kSigmoid: {
      auto& dx = in_grad(0);
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += dy[i] * y[i] * (T(1) - y[i]);
      return;
    }
    case OpKind::kMaxPool: {
      auto& dx = in_grad(0);
      const std::size_t c = n.out.shape[0];
      for (std::size_t j = 0; j < c; ++j) dx[static_cast<std::size_t>(n.ints[j]) * c + j] += dy[j];
      return;
    }
    case OpKind::kDense: {
      const std::size_t d = shape(n.in[0])[0];
      const std::size_t o = n.out.shape[0];
      K.gemm_nn_acc(1, o, d, dy, o, in_val(1).data(), d, in_grad(0).data(), d);
      K.gemm_tn_acc(1, o, d, dy, o, in_val(0).data(), d, in_grad(1).data(), d);
      K.axpy(T(1), dy, in_grad(2).data(), o);
      return;
    }
    case OpKind::kAbsDiff: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      auto& da = in_grad(0);
      auto& db = in_grad(1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const T s = a[i] > b[i] ? T(1) : (a[i] < b[i] ? T(-1) : T(0));
        da[i] += s * dy[i];
        db[i] -= s * dy[i];
      }
      return;
    }
    case OpKind::kSquareDiff: {
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      auto& da = in_grad(0);
      auto& db = in_grad(1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const T g = T(2) * (a[i] - b[i]) * dy[i];
        da[i] += g;
        db[i] -= g;
      }
      return;
    }
    case OpKind::kWeightedSum: {
      const T g = dy[0];
      K.axpy(g, in_val(1).data(), in_grad(0).data(), in_grad(0).size());
      K.axpy(g, in_val(0).data(), in_grad(1).data(), in_grad(1).size());
      return;
    }
    case OpKind::kCosine: {
      const T aa = n.saved[1], bb = n.saved[2];
      if (!(aa > T(0) && bb > T(0))) return;
      const T inv = T(1) / std::sqrt(aa * bb);
      const T s = y[0];
      const T g = dy[0];
      // d cos / da = b / (|a||b|) - cos * a / |a|^2
      K.axpy(g * inv, in_val(1).data(), in_grad(0).data(), in_grad(0).size());
      K.axpy(-g * s / aa, in_val(0).data(), in_grad(0).data(), in_grad(0).size());
      K.axpy(g * inv, in_val(0).data(), in_grad(1).data(), in_grad(1).size());
      K.axpy(-g * s / bb, in_val(1).data(), in_grad(1).data(), in_grad(1).size());
      return;
    }
    case OpKind::kRuzicka: {
      const T lo = n.saved[0], hi = n.saved[1];
      if (!(hi > T(0))) return;
      const T g_lo = dy[0] / hi;
      const T g_hi = -dy[0] * lo / (hi * hi);
      const auto& a = in_val(0);
      const auto& b = in_val(1);
      auto& da = in_grad(0);
      auto& db = in_grad(1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
          da[i] += g_lo;
          db[i] += g_hi;
        } else {
          da[i] += g_hi;
          db[i] += g_lo;
        }
      }
      return;
    }
    case OpKind::kScaleShift: {
      auto& dx = in_grad(0);
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += n.c0 * dy[i];
      return;
    }
    case OpKind::kBce: {
      const T p = in_val(0)[0];
      const T t = in_val(1)[0];
      const T lo = T(kBceClip), hi = T(1) - T(kBceClip);
      if (p > lo && p < hi) {
        in_grad(0)[0] += dy[0] * (-t / p + (T(1) - t) / (T(1) - p));
      }
      in_grad(1)[0] += dy[0] * (std::log(T(1) - std::clamp(p, lo, hi)) - std::log(std::clamp(p, lo, hi)));
      return;
    }
    case OpKind::kSoftmaxXent: {
      auto& dz = in_grad(0);
      const auto target = static_cast<std::size_t>(node(n.in[1]).ints[0]);
      for (std::size_t i = 0; i < dz.size(); ++i) dz[i] += dy[0] * (n.saved[i] - (i == target ? T(1) : T(0)));
      return;
    }
    case OpKind::kSum: {
      auto& dx = in_grad(0);
      for (auto& v : dx) v += dy[0];
      return;
    }
  }
}

template <typename T>
void Graph<T>::zero_grad() {
  for (NodeId id : params_) {
    auto& g = at(id).out.grad;
    std::fill(g.begin(), g.end(), T(0));
  }
}

template class Graph<float>;
template class Graph<double>;

}  // namespace authid::numcore
