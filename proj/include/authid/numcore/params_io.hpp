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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "authid/numcore/graph.hpp"

namespace authid::numcore {

inline constexpr int kParamFormatVersion = 1;

struct ParamEntry {
  std::string name;
  Shape shape;
  std::vector<float> values;
};

struct ParamFile {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<ParamEntry> params;
};

// One JSON header line (format, version, names, shapes, caller metadata)
// followed by every parameter as little-endian float32, in header order.
void write_params(std::ostream& out, const ParamFile& file);

// Throws VersionMismatch on a different format version and ParseError on a
// malformed header, a short payload or trailing bytes.
ParamFile read_params(std::istream& in, const std::string& source);

template <typename T>
std::vector<ParamEntry> collect_params(const Graph<T>& graph);

// Copies values into the graph's parameters, matching by position, name
// and shape.
template <typename T>
void assign_params(Graph<T>& graph, const std::vector<ParamEntry>& params);

}  // namespace authid::numcore
