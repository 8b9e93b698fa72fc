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

#include "authid/numcore/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"

namespace authid::numcore {

double relative_error(double analytic, double numeric) noexcept {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

double check_leaves(Graph<double>& graph, NodeId loss, const std::vector<NodeId>& leaves,
                    std::size_t coords_per_leaf, std::uint64_t seed, double h) {
  graph.forward();
  graph.zero_grad();
  graph.backward(loss);
  std::vector<std::vector<double>> analytic;
  for (NodeId leaf : leaves) analytic.emplace_back(graph.grad(leaf).begin(), graph.grad(leaf).end());

  Rng rng(seed);
  double worst = 0;
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    auto values = graph.value(leaves[l]);
    std::vector<std::size_t> coords(values.size());
    std::iota(coords.begin(), coords.end(), 0);
    if (coords.size() > coords_per_leaf) {
      rng.shuffle(std::span(coords));
      coords.resize(coords_per_leaf);
    }
    for (std::size_t i : coords) {
      const double saved = values[i];
      values[i] = saved + h;
      graph.forward();
      const double up = graph.value(loss)[0];
      values[i] = saved - h;
      graph.forward();
      const double down = graph.value(loss)[0];
      values[i] = saved;
      worst = std::max(worst, relative_error(analytic[l][i], (up - down) / (2 * h)));
    }
  }
  graph.forward();
  return worst;
}

namespace {

void fill_uniform(std::span<double> v, Rng& rng, double lo, double hi) {
  for (auto& x : v) x = rng.uniform(lo, hi);
}

bool has_kink(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) < 1e-3) return true;
  }
  return false;
}

bool pool_margin_small(std::span<const double> x, std::size_t len, std::size_t c) {
  for (std::size_t j = 0; j < c; ++j) {
    double best = -1e300, second = -1e300;
    for (std::size_t t = 0; t < len; ++t) {
      const double v = x[t * c + j];
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    if (len > 1 && best - second < 1e-3) return true;
  }
  return false;
}

}  // namespace

double grad_check(OpKind kernel, const std::vector<Shape>& shapes, int trials, std::uint64_t seed) {
  auto need = [&](std::size_t n) {
    if (shapes.size() != n) {
      throw ShapeError(std::string(op_name(kernel)) + " check needs " + std::to_string(n) + " shapes");
    }
  };
  Graph<double> g;
  std::vector<NodeId> leaves;
  NodeId out = -1;
  NodeId idx = -1;
  double lo = -1.0, hi = 1.0;
  switch (kernel) {
    case OpKind::kTanh:
    case OpKind::kSigmoid:
    case OpKind::kMaxPool:
    case OpKind::kSum:
    case OpKind::kScaleShift: {
      need(1);
      const NodeId x = g.input(shapes[0], "x");
      leaves = {x};
      if (kernel == OpKind::kTanh) out = g.tanh(x);
      if (kernel == OpKind::kSigmoid) {
        out = g.sigmoid(x);
        lo = -4.0;
        hi = 4.0;
      }
      if (kernel == OpKind::kMaxPool) out = g.max_pool(x);
      if (kernel == OpKind::kSum) out = g.sum(x);
      if (kernel == OpKind::kScaleShift) out = g.scale_shift(x, 0.5, 0.5);
      break;
    }
    case OpKind::kConv1d: {
      need(2);
      const NodeId x = g.input(shapes[0], "x");
      const NodeId w = g.param(shapes[1], "w");
      const NodeId b = g.param({shapes[1].at(0)}, "b");
      leaves = {x, w, b};
      out = g.conv1d(x, w, b);
      break;
    }
    case OpKind::kDense: {
      need(2);
      const NodeId x = g.input(shapes[0], "x");
      const NodeId w = g.param(shapes[1], "w");
      const NodeId b = g.param({shapes[1].at(0)}, "b");
      leaves = {x, w, b};
      out = g.dense(x, w, b);
      break;
    }
    case OpKind::kEmbedding: {
      need(2);
      const NodeId table = g.param(shapes[0], "table");
      idx = g.index_input(shapes[1].at(0), "indices");
      leaves = {table};
      out = g.embedding(table, idx);
      break;
    }
    case OpKind::kAbsDiff:
    case OpKind::kSquareDiff:
    case OpKind::kWeightedSum:
    case OpKind::kCosine:
    case OpKind::kRuzicka: {
      need(2);
      const NodeId a = g.input(shapes[0], "a");
      const NodeId b = g.input(shapes[1], "b");
      leaves = {a, b};
      if (kernel == OpKind::kAbsDiff) out = g.abs_diff(a, b);
      if (kernel == OpKind::kSquareDiff) out = g.square_diff(a, b);
      if (kernel == OpKind::kWeightedSum) out = g.weighted_sum(a, b);
      if (kernel == OpKind::kCosine) out = g.cosine(a, b);
      if (kernel == OpKind::kRuzicka) {
        out = g.ruzicka(a, b);
        lo = 0.01;
      }
      break;
    }
    case OpKind::kBce: {
      need(0);
      const NodeId p = g.input({1}, "p");
      const NodeId y = g.input({1}, "label");
      leaves = {p, y};
      out = g.bce(p, y);
      break;
    }
    case OpKind::kSoftmaxXent: {
      need(1);
      const NodeId z = g.input(shapes[0], "logits");
      idx = g.index_input(1, "target");
      leaves = {z};
      out = g.softmax_xent(z, idx);
      break;
    }
    default:
      throw ConfigError("no gradient check for " + std::string(op_name(kernel)));
  }
  const NodeId r = g.input(g.shape(out), "r");
  const NodeId loss = g.weighted_sum(out, r);

  Rng rng(seed);
  double worst = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw NumericError("could not sample a kink-free point");
      for (NodeId leaf : leaves) fill_uniform(g.value(leaf), rng, lo, hi);
      if (kernel == OpKind::kBce) {
        g.value(leaves[0])[0] = rng.uniform(0.05, 0.95);
        g.value(leaves[1])[0] = rng.uniform01();
      }
      fill_uniform(g.value(r), rng, 0.5, 1.5);
      if (idx >= 0) {
        const std::size_t classes = shapes[0][0];
        std::vector<std::int32_t> ids(g.shape(idx)[0]);
        for (auto& i : ids) i = static_cast<std::int32_t>(rng.uniform_index(classes));
        g.set_indices(idx, ids);
      }
      bool ok = true;
      if (kernel == OpKind::kAbsDiff || kernel == OpKind::kRuzicka) {
        ok = !has_kink(g.value(leaves[0]), g.value(leaves[1]));
      }
      if (kernel == OpKind::kMaxPool && shapes[0].size() == 2) {
        ok = !pool_margin_small(g.value(leaves[0]), shapes[0][0], shapes[0][1]);
      }
      if (ok) break;
    }
    worst = std::max(worst, check_leaves(g, loss, leaves, 64, derive_seed(seed, {static_cast<std::uint64_t>(trial)})));
  }
  return worst;
}

}  // namespace authid::numcore
