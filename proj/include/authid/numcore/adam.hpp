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
#include <vector>

#include "authid/numcore/graph.hpp"

namespace authid::numcore {

struct AdamConfig {
  double lr = 0.0005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First and second moments for every parameter of one graph, in the order
// of Graph::params().
template <typename T>
struct AdamState {
  std::vector<std::vector<T>> m;
  std::vector<std::vector<T>> v;
  std::int64_t step = 0;

  AdamState() = default;
  explicit AdamState(const Graph<T>& graph);
};

// One bias-corrected Adam update from the accumulated parameter gradients.
// Throws NumericError naming the parameter if any gradient is non-finite;
// in that case nothing is updated.
template <typename T>
void adam_step(Graph<T>& graph, AdamState<T>& state, const AdamConfig& cfg);

extern template struct AdamState<float>;
extern template struct AdamState<double>;

}  // namespace authid::numcore
