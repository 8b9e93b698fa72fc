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
#include <string_view>

namespace authid::simd {

enum class Level { kScalar, kAvx2, kNeon };

std::string_view level_name(Level level) noexcept;

// Inner-loop kernels shared by the network layers and the similarity
// baseline. Every variant must agree with the scalar reference up to
// floating-point reassociation.
template <typename T>
struct KernelTable {
  // sum_i x[i] * y[i]
  T (*dot)(const T* x, const T* y, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(T alpha, const T* x, T* y, std::size_t n);

  // C[m*ldc + n] = bias[n] + sum_k A[m*lda + k] * B[n*ldb + k]
  // bias may be null. Rows of A may overlap (lda < K), which is how valid
  // 1-D convolution windows are expressed.
  void (*gemm_nt)(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                  const T* B, std::size_t ldb, const T* bias, T* C, std::size_t ldc);

  // C[m*ldc + k] += sum_n A[m*lda + n] * B[n*ldb + k]
  // Rows are processed in increasing m, so rows of C may overlap.
  // Zero entries of A are skipped.
  void (*gemm_nn_acc)(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                      const T* B, std::size_t ldb, T* C, std::size_t ldc);

  // C[n*ldc + k] += sum_m A[m*lda + n] * B[m*ldb + k]
  // Zero entries of A are skipped.
  void (*gemm_tn_acc)(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                      const T* B, std::size_t ldb, T* C, std::size_t ldc);

  // out[0] = sum_i mask[i] * min(x[i], y[i]); out[1] = sum_i mask[i] * max(x[i], y[i])
  void (*masked_minmax)(const T* x, const T* y, const T* mask, std::size_t n, T* out);

  // out[0] = sum mask*x*y; out[1] = sum mask*x*x; out[2] = sum mask*y*y
  void (*masked_dot3)(const T* x, const T* y, const T* mask, std::size_t n, T* out);
};

bool supported(Level level) noexcept;

// Level picked at first use: the best supported one, unless the AUTHID_SIMD
// environment variable names another ("scalar", "avx2", "neon").
Level active_level();

// Overrides the active level. Throws ConfigError if unsupported on this CPU.
void set_level(Level level);

template <typename T>
const KernelTable<T>& kernels();

// A specific variant. Throws ConfigError if unsupported on this CPU.
template <typename T>
const KernelTable<T>& kernels(Level level);

template <>
const KernelTable<float>& kernels<float>();
template <>
const KernelTable<double>& kernels<double>();
template <>
const KernelTable<float>& kernels<float>(Level level);
template <>
const KernelTable<double>& kernels<double>(Level level);

}  // namespace authid::simd
