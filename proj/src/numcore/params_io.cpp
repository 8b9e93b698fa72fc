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

#include "authid/numcore/params_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "authid/common/error.hpp"

namespace authid::numcore {
using nlohmann::json;

namespace {

std::uint32_t to_le(std::uint32_t x) {
  if constexpr (std::endian::native == std::endian::little) {
    return x;
  } else {
    return ((x & 0xFFu) << 24) | ((x & 0xFF00u) << 8) | ((x >> 8) & 0xFF00u) | (x >> 24);
  }
}

}  // namespace

void write_params(std::ostream& out, const ParamFile& file) {
  json entries = json::array();
  for (const auto& p : file.params) {
    if (p.values.size() != shape_size(p.shape)) {
      throw ShapeError("parameter '" + p.name + "' has " + std::to_string(p.values.size()) +
                       " values for shape " + shape_str(p.shape));
    }
    entries.push_back({{"name", p.name}, {"shape", p.shape}});
  }
  const json header = {{"format", "authid-params"},
                       {"version", kParamFormatVersion},
                       {"dtype", "float32"},
                       {"byte_order", "little"},
                       {"params", std::move(entries)},
                       {"meta", file.meta}};
  out << header.dump() << '\n';
  std::vector<std::uint32_t> buf;
  for (const auto& p : file.params) {
    buf.resize(p.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = to_le(std::bit_cast<std::uint32_t>(p.values[i]));
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 4));
  }
  if (!out) throw IoError("error while writing parameters");
}

ParamFile read_params(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": empty parameter file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error&) {
    throw ParseError(source + ": unreadable parameter header");
  }
  if (!header.is_object() || header.value("format", "") != "authid-params") {
    throw ParseError(source + ": not an authid parameter file");
  }
  const int version = header.value("version", -1);
  if (version != kParamFormatVersion) {
    throw VersionMismatch(source + ": parameter format version " + std::to_string(version) + ", expected " +
                          std::to_string(kParamFormatVersion));
  }
  ParamFile file;
  try {
    if (header.at("dtype") != "float32" || header.at("byte_order") != "little") {
      throw ParseError(source + ": unsupported parameter encoding");
    }
    file.meta = header.value("meta", json::object());
    for (const auto& e : header.at("params")) {
      ParamEntry p;
      p.name = e.at("name").get<std::string>();
      p.shape = e.at("shape").get<Shape>();
      p.values.resize(shape_size(p.shape));
      file.params.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw ParseError(source + ": bad parameter header: " + e.what());
  }
  std::vector<std::uint32_t> buf;
  for (auto& p : file.params) {
    buf.resize(p.values.size());
    const auto bytes = static_cast<std::streamsize>(buf.size() * 4);
    in.read(reinterpret_cast<char*>(buf.data()), bytes);
    if (in.gcount() != bytes) throw ParseError(source + ": truncated parameter data in '" + p.name + "'");
    for (std::size_t i = 0; i < buf.size(); ++i) p.values[i] = std::bit_cast<float>(to_le(buf[i]));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError(source + ": trailing bytes after parameter data");
  return file;
}

template <typename T>
std::vector<ParamEntry> collect_params(const Graph<T>& graph) {
  std::vector<ParamEntry> out;
  for (NodeId id : graph.params()) {
    const auto& n = graph.node(id);
    ParamEntry p{n.name, n.out.shape, {}};
    p.values.assign(n.out.values.begin(), n.out.values.end());
    out.push_back(std::move(p));
  }
  return out;
}

template <typename T>
void assign_params(Graph<T>& graph, const std::vector<ParamEntry>& params) {
  const auto& ids = graph.params();
  if (ids.size() != params.size()) {
    throw ShapeError("expected " + std::to_string(ids.size()) + " parameters, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& n = graph.node(ids[i]);
    if (n.name != params[i].name || n.out.shape != params[i].shape) {
      throw ShapeError("parameter " + std::to_string(i) + " is '" + params[i].name + "' " +
                       shape_str(params[i].shape) + ", graph expects '" + n.name + "' " + shape_str(n.out.shape));
    }
    auto dst = graph.value(ids[i]);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = static_cast<T>(params[i].values[k]);
  }
}

template std::vector<ParamEntry> collect_params<float>(const Graph<float>&);
template std::vector<ParamEntry> collect_params<double>(const Graph<double>&);
template void assign_params<float>(Graph<float>&, const std::vector<ParamEntry>&);
template void assign_params<double>(Graph<double>&, const std::vector<ParamEntry>&);

}  // namespace authid::numcore
