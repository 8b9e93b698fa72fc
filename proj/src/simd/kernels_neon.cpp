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

// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include "kernels_internal.hpp"
#include "kernels_vec.hpp"

namespace authid::simd::detail {
namespace {

struct NeonF32 {
  using T = float;
  using reg = float32x4_t;
  static constexpr std::size_t kWidth = 4;
  static reg zero() { return vdupq_n_f32(0.0f); }
  static reg set1(float x) { return vdupq_n_f32(x); }
  static reg load(const float* p) { return vld1q_f32(p); }
  static void store(float* p, reg v) { vst1q_f32(p, v); }
  static reg fmadd(reg a, reg b, reg c) { return vfmaq_f32(c, a, b); }
  static reg add(reg a, reg b) { return vaddq_f32(a, b); }
  static reg mul(reg a, reg b) { return vmulq_f32(a, b); }
  static reg min(reg a, reg b) { return vminq_f32(a, b); }
  static reg max(reg a, reg b) { return vmaxq_f32(a, b); }
  static float hsum(reg v) { return vaddvq_f32(v); }
};

struct NeonF64 {
  using T = double;
  using reg = float64x2_t;
  static constexpr std::size_t kWidth = 2;
  static reg zero() { return vdupq_n_f64(0.0); }
  static reg set1(double x) { return vdupq_n_f64(x); }
  static reg load(const double* p) { return vld1q_f64(p); }
  static void store(double* p, reg v) { vst1q_f64(p, v); }
  static reg fmadd(reg a, reg b, reg c) { return vfmaq_f64(c, a, b); }
  static reg add(reg a, reg b) { return vaddq_f64(a, b); }
  static reg mul(reg a, reg b) { return vmulq_f64(a, b); }
  static reg min(reg a, reg b) { return vminq_f64(a, b); }
  static reg max(reg a, reg b) { return vmaxq_f64(a, b); }
  static double hsum(reg v) { return vaddvq_f64(v); }
};

constexpr KernelTable<float> kNeonF32 = make_vec_table<NeonF32>();
constexpr KernelTable<double> kNeonF64 = make_vec_table<NeonF64>();

}  // namespace

const KernelTable<float>& neon_f32() { return kNeonF32; }
const KernelTable<double>& neon_f64() { return kNeonF64; }

}  // namespace authid::simd::detail
