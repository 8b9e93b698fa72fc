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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace authid::numcore {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape) noexcept;
std::string shape_str(const Shape& shape);

// Dense row-major array with a same-shape gradient buffer.
template <typename T>
struct Tensor {
  Shape shape;
  std::vector<T> values;
  std::vector<T> grad;

  Tensor() = default;
  explicit Tensor(Shape s) : shape(std::move(s)), values(shape_size(shape)), grad(values.size()) {}

  std::size_t size() const noexcept { return values.size(); }
  std::span<T> value_span() noexcept { return values; }
  std::span<const T> value_span() const noexcept { return values; }
  std::span<T> grad_span() noexcept { return grad; }
  std::span<const T> grad_span() const noexcept { return grad; }
};

}  // namespace authid::numcore
