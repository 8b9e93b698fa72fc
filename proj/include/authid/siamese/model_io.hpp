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

#include "authid/siamese/model.hpp"

namespace authid::siamese {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json subnet_to_json(const SubNetConfig& cfg);
SubNetConfig subnet_from_json(const nlohmann::json& j);

// Parameter file whose header carries the sub-network config, the energy
// head, the cosine mapping and the vocabulary with its fingerprint.
void save_model(SiameseModel& model, const std::filesystem::path& path);

// Throws VersionMismatch for another model format version and ParseError
// for a truncated or inconsistent file.
SiameseModel load_model(const std::filesystem::path& path);

}  // namespace authid::siamese
