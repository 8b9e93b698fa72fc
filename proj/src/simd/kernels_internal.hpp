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

#include "authid/simd/kernels.hpp"

namespace authid::simd::detail {

const KernelTable<float>& scalar_f32();
const KernelTable<double>& scalar_f64();

#if defined(AUTHID_HAVE_AVX2)
const KernelTable<float>& avx2_f32();
const KernelTable<double>& avx2_f64();
#endif

#if defined(AUTHID_HAVE_NEON)
const KernelTable<float>& neon_f32();
const KernelTable<double>& neon_f64();
#endif

}  // namespace authid::simd::detail
