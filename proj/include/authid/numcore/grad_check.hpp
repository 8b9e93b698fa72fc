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

inline constexpr double kFiniteDifferenceStep = 1e-5;

// |a - n| / max(|a|, |n|, 1e-6)
double relative_error(double analytic, double numeric) noexcept;

// Compares backward() against central differences of a scalar node with
// respect to the listed leaf nodes (inputs or parameters). Leaves larger than
// coords_per_leaf are spot-checked at random coordinates.
double check_leaves(Graph<double>& graph, NodeId loss, const std::vector<NodeId>& leaves,
                    std::size_t coords_per_leaf, std::uint64_t seed, double h = kFiniteDifferenceStep);

// Random-point check of a single kernel in 64-bit mode. The kernel output is
// reduced to a scalar through a random weighting. Shapes by kernel:
//   tanh, sigmoid, max_pool, sum, scale_shift: {x}
//   conv1d: {x [L, Cin], w [Cout, K, Cin]}   dense: {x [D], w [O, D]}
//   embedding: {table [V, E], indices [L]}   softmax_xent: {logits [C]}
//   abs_diff, square_diff, weighted_sum, cosine, ruzicka: {a, b}
//   bce: {}
// Points near kinks (equal operands of abs_diff or ruzicka, max_pool
// margins below 1e-3) are resampled.
double grad_check(OpKind kernel, const std::vector<Shape>& shapes, int trials, std::uint64_t seed);

}  // namespace authid::numcore
