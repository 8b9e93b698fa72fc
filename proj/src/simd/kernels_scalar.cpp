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

#include <algorithm>

#include "kernels_internal.hpp"

namespace authid::simd::detail {
namespace {

template <typename T>
T dot(const T* x, const T* y, std::size_t n) {
  T s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

template <typename T>
void axpy(T alpha, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
             std::size_t ldb, const T* bias, T* C, std::size_t ldc) {
  for (std::size_t m = 0; m < M; ++m) {
    const T* a = A + m * lda;
    for (std::size_t n = 0; n < N; ++n) {
      const T* b = B + n * ldb;
      T s = 0;
      for (std::size_t k = 0; k < K; ++k) s += a[k] * b[k];
      C[m * ldc + n] = (bias ? bias[n] : T(0)) + s;
    }
  }
}

template <typename T>
void gemm_nn_acc(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                 const T* B, std::size_t ldb, T* C, std::size_t ldc) {
  for (std::size_t m = 0; m < M; ++m) {
    T* c = C + m * ldc;
    for (std::size_t n = 0; n < N; ++n) {
      const T a = A[m * lda + n];
      if (a == T(0)) continue;
      const T* b = B + n * ldb;
      for (std::size_t k = 0; k < K; ++k) c[k] += a * b[k];
    }
  }
}

template <typename T>
void gemm_tn_acc(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                 const T* B, std::size_t ldb, T* C, std::size_t ldc) {
  for (std::size_t n = 0; n < N; ++n) {
    T* c = C + n * ldc;
    for (std::size_t m = 0; m < M; ++m) {
      const T a = A[m * lda + n];
      if (a == T(0)) continue;
      const T* b = B + m * ldb;
      for (std::size_t k = 0; k < K; ++k) c[k] += a * b[k];
    }
  }
}

template <typename T>
void masked_minmax(const T* x, const T* y, const T* mask, std::size_t n, T* out) {
  T lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lo += mask[i] * std::min(x[i], y[i]);
    hi += mask[i] * std::max(x[i], y[i]);
  }
  out[0] = lo;
  out[1] = hi;
}

template <typename T>
void masked_dot3(const T* x, const T* y, const T* mask, std::size_t n, T* out) {
  T xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const T mx = mask[i] * x[i];
    xy += mx * y[i];
    xx += mx * x[i];
    yy += mask[i] * y[i] * y[i];
  }
  out[0] = xy;
  out[1] = xx;
  out[2] = yy;
}

template <typename T>
constexpr KernelTable<T> make_table() {
  return {&dot<T>,         &axpy<T>,          &gemm_nt<T>,    &gemm_nn_acc<T>,
          &gemm_tn_acc<T>, &masked_minmax<T>, &masked_dot3<T>};
}

constexpr KernelTable<float> kScalarF32 = make_table<float>();
constexpr KernelTable<double> kScalarF64 = make_table<double>();

}  // namespace

const KernelTable<float>& scalar_f32() { return kScalarF32; }
const KernelTable<double>& scalar_f64() { return kScalarF64; }

}  // namespace authid::simd::detail
