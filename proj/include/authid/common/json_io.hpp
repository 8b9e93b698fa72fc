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

#include <filesystem>

#include <nlohmann/json.hpp>

namespace authid {

// Versioned JSON documents: every file the toolkit writes carries a
// "format" tag and an integer "version".
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Throws ParseError on a wrong format tag, VersionMismatch on a wrong version.
void check_header(const nlohmann::json& doc, const char* format, int version,
                  const std::filesystem::path& path);

}  // namespace authid
