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

#include "authid/numcore/adam.hpp"

#include <cmath>

#include "authid/common/error.hpp"

namespace authid::numcore {

template <typename T>
AdamState<T>::AdamState(const Graph<T>& graph) {
  for (NodeId id : graph.params()) {
    m.emplace_back(graph.value(id).size(), T(0));
    v.emplace_back(graph.value(id).size(), T(0));
  }
}

template <typename T>
void adam_step(Graph<T>& graph, AdamState<T>& state, const AdamConfig& cfg) {
  const auto& params = graph.params();
  if (state.m.size() != params.size()) throw ShapeError("Adam state does not match the graph's parameters");
  if (!(cfg.lr >= 0)) throw ConfigError("learning rate must be >= 0");
  for (std::size_t p = 0; p < params.size(); ++p) {
    if (state.m[p].size() != graph.value(params[p]).size()) {
      throw ShapeError("Adam moments do not match " + graph.describe(params[p]));
    }
    for (T g : graph.grad(params[p])) {
      if (!std::isfinite(g)) throw NumericError("non-finite gradient in parameter '" + graph.node(params[p]).name + "'");
    }
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  const T b1 = static_cast<T>(cfg.beta1), b2 = static_cast<T>(cfg.beta2);
  const T step_size = static_cast<T>(cfg.lr / c1);
  const T inv_c2 = static_cast<T>(1.0 / c2);
  const T eps = static_cast<T>(cfg.eps);
  for (std::size_t p = 0; p < params.size(); ++p) {
    auto w = graph.value(params[p]);
    auto g = graph.grad(params[p]);
    auto& m = state.m[p];
    auto& v = state.v[p];
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = b1 * m[i] + (T(1) - b1) * g[i];
      v[i] = b2 * v[i] + (T(1) - b2) * g[i] * g[i];
      w[i] -= step_size * m[i] / (std::sqrt(v[i] * inv_c2) + eps);
    }
  }
}

template struct AdamState<float>;
template struct AdamState<double>;
template void adam_step<float>(Graph<float>&, AdamState<float>&, const AdamConfig&);
template void adam_step<double>(Graph<double>&, AdamState<double>&, const AdamConfig&);

}  // namespace authid::numcore
