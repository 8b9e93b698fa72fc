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

#include <atomic>
#include <cstdlib>
#include <string>

#include "authid/common/error.hpp"
#include "kernels_internal.hpp"

namespace authid::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(AUTHID_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level detect() {
  if (const char* env = std::getenv("AUTHID_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Level::kScalar;
    if (want == "avx2" && supported(Level::kAvx2)) return Level::kAvx2;
    if (want == "neon" && supported(Level::kNeon)) return Level::kNeon;
  }
  if (supported(Level::kAvx2)) return Level::kAvx2;
  if (supported(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> slot{static_cast<int>(detect())};
  return slot;
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

bool supported(Level level) noexcept {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
    case Level::kNeon:
#if defined(AUTHID_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Level active_level() { return static_cast<Level>(level_slot().load(std::memory_order_relaxed)); }

void set_level(Level level) {
  if (!supported(level)) {
    throw ConfigError("SIMD level '" + std::string(level_name(level)) + "' is not supported here");
  }
  level_slot().store(static_cast<int>(level), std::memory_order_relaxed);
}

template <>
const KernelTable<float>& kernels<float>(Level level) {
  if (!supported(level)) {
    throw ConfigError("SIMD level '" + std::string(level_name(level)) + "' is not supported here");
  }
  switch (level) {
#if defined(AUTHID_HAVE_AVX2)
    case Level::kAvx2:
      return detail::avx2_f32();
#endif
#if defined(AUTHID_HAVE_NEON)
    case Level::kNeon:
      return detail::neon_f32();
#endif
    default:
      return detail::scalar_f32();
  }
}

template <>
const KernelTable<double>& kernels<double>(Level level) {
  if (!supported(level)) {
    throw ConfigError("SIMD level '" + std::string(level_name(level)) + "' is not supported here");
  }
  switch (level) {
#if defined(AUTHID_HAVE_AVX2)
    case Level::kAvx2:
      return detail::avx2_f64();
#endif
#if defined(AUTHID_HAVE_NEON)
    case Level::kNeon:
      return detail::neon_f64();
#endif
    default:
      return detail::scalar_f64();
  }
}

template <>
const KernelTable<float>& kernels<float>() {
  return kernels<float>(active_level());
}

template <>
const KernelTable<double>& kernels<double>() {
  return kernels<double>(active_level());
}

}  // namespace authid::simd
