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

#include "authid/common/json_io.hpp"

#include <fstream>
#include <sstream>

#include "authid/common/error.hpp"

namespace authid {
namespace fs = std::filesystem;
using nlohmann::json;

void write_json_file(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump() << '\n';
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

void check_header(const json& doc, const char* format, int version, const fs::path& path) {
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != format) {
    throw ParseError(path.string() + ": not a " + format + " file");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw ParseError(path.string() + ": missing version field");
  }
  const int found = doc["version"].get<int>();
  if (found != version) {
    throw VersionMismatch(path.string() + ": " + format + " version " + std::to_string(found) +
                          ", expected " + std::to_string(version));
  }
}

}  // namespace authid
