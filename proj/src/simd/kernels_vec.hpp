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

// Width-generic kernel bodies. Each instruction set supplies a traits type
//   V::T, V::reg, V::kWidth, zero(), set1(), load(), store(), fmadd(),
//   add(), mul(), min(), max(), hsum()
// and instantiates make_vec_table<V>() inside a translation unit compiled
// for that instruction set. Nothing here may call non-template inline
// library code, since the linker could then pick an ISA-specific copy.

#include <cstddef>

#include "authid/simd/kernels.hpp"

namespace authid::simd::detail {

template <typename V>
struct VecKernels {
  using T = typename V::T;
  using R = typename V::reg;
  static constexpr std::size_t W = V::kWidth;

  static T dot(const T* x, const T* y, std::size_t n) {
    R a0 = V::zero(), a1 = V::zero();
    std::size_t i = 0;
    for (; i + 2 * W <= n; i += 2 * W) {
      a0 = V::fmadd(V::load(x + i), V::load(y + i), a0);
      a1 = V::fmadd(V::load(x + i + W), V::load(y + i + W), a1);
    }
    for (; i + W <= n; i += W) a0 = V::fmadd(V::load(x + i), V::load(y + i), a0);
    T s = V::hsum(V::add(a0, a1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
  }

  static void axpy(T alpha, const T* x, T* y, std::size_t n) {
    const R va = V::set1(alpha);
    std::size_t i = 0;
    for (; i + W <= n; i += W) V::store(y + i, V::fmadd(va, V::load(x + i), V::load(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
  }

  static void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                      const T* B, std::size_t ldb, const T* bias, T* C, std::size_t ldc) {
    for (std::size_t m = 0; m < M; ++m) {
      const T* a = A + m * lda;
      T* c = C + m * ldc;
      std::size_t n = 0;
      for (; n + 4 <= N; n += 4) {
        const T* b0 = B + n * ldb;
        const T* b1 = b0 + ldb;
        const T* b2 = b1 + ldb;
        const T* b3 = b2 + ldb;
        R s0 = V::zero(), s1 = V::zero(), s2 = V::zero(), s3 = V::zero();
        std::size_t k = 0;
        for (; k + W <= K; k += W) {
          const R va = V::load(a + k);
          s0 = V::fmadd(va, V::load(b0 + k), s0);
          s1 = V::fmadd(va, V::load(b1 + k), s1);
          s2 = V::fmadd(va, V::load(b2 + k), s2);
          s3 = V::fmadd(va, V::load(b3 + k), s3);
        }
        T t0 = V::hsum(s0), t1 = V::hsum(s1), t2 = V::hsum(s2), t3 = V::hsum(s3);
        for (; k < K; ++k) {
          t0 += a[k] * b0[k];
          t1 += a[k] * b1[k];
          t2 += a[k] * b2[k];
          t3 += a[k] * b3[k];
        }
        c[n] = (bias ? bias[n] : T(0)) + t0;
        c[n + 1] = (bias ? bias[n + 1] : T(0)) + t1;
        c[n + 2] = (bias ? bias[n + 2] : T(0)) + t2;
        c[n + 3] = (bias ? bias[n + 3] : T(0)) + t3;
      }
      for (; n < N; ++n) c[n] = (bias ? bias[n] : T(0)) + dot(a, B + n * ldb, K);
    }
  }

  static void gemm_nn_acc(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                          const T* B, std::size_t ldb, T* C, std::size_t ldc) {
    for (std::size_t m = 0; m < M; ++m) {
      const T* arow = A + m * lda;
      bool any = false;
      for (std::size_t n = 0; n < N && !any; ++n) any = arow[n] != T(0);
      if (!any) continue;
      T* c = C + m * ldc;
      std::size_t k = 0;
      for (; k + W <= K; k += W) {
        R acc = V::load(c + k);
        for (std::size_t n = 0; n < N; ++n) {
          if (arow[n] == T(0)) continue;
          acc = V::fmadd(V::set1(arow[n]), V::load(B + n * ldb + k), acc);
        }
        V::store(c + k, acc);
      }
      for (; k < K; ++k) {
        T s = c[k];
        for (std::size_t n = 0; n < N; ++n) {
          if (arow[n] == T(0)) continue;
          s += arow[n] * B[n * ldb + k];
        }
        c[k] = s;
      }
    }
  }

  static void gemm_tn_acc(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda,
                          const T* B, std::size_t ldb, T* C, std::size_t ldc) {
    for (std::size_t n = 0; n < N; ++n) {
      T* c = C + n * ldc;
      std::size_t k = 0;
      for (; k + W <= K; k += W) {
        R acc = V::load(c + k);
        for (std::size_t m = 0; m < M; ++m) {
          const T a = A[m * lda + n];
          if (a == T(0)) continue;
          acc = V::fmadd(V::set1(a), V::load(B + m * ldb + k), acc);
        }
        V::store(c + k, acc);
      }
      for (; k < K; ++k) {
        T s = c[k];
        for (std::size_t m = 0; m < M; ++m) {
          const T a = A[m * lda + n];
          if (a == T(0)) continue;
          s += a * B[m * ldb + k];
        }
        c[k] = s;
      }
    }
  }

  static void masked_minmax(const T* x, const T* y, const T* mask, std::size_t n, T* out) {
    R lo = V::zero(), hi = V::zero();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
      const R vx = V::load(x + i), vy = V::load(y + i), vm = V::load(mask + i);
      lo = V::fmadd(vm, V::min(vx, vy), lo);
      hi = V::fmadd(vm, V::max(vx, vy), hi);
    }
    T slo = V::hsum(lo), shi = V::hsum(hi);
    for (; i < n; ++i) {
      const bool x_lt = x[i] < y[i];
      slo += mask[i] * (x_lt ? x[i] : y[i]);
      shi += mask[i] * (x_lt ? y[i] : x[i]);
    }
    out[0] = slo;
    out[1] = shi;
  }

  static void masked_dot3(const T* x, const T* y, const T* mask, std::size_t n, T* out) {
    R xy = V::zero(), xx = V::zero(), yy = V::zero();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
      const R vx = V::load(x + i), vy = V::load(y + i), vm = V::load(mask + i);
      const R mx = V::mul(vm, vx);
      xy = V::fmadd(mx, vy, xy);
      xx = V::fmadd(mx, vx, xx);
      yy = V::fmadd(V::mul(vm, vy), vy, yy);
    }
    T sxy = V::hsum(xy), sxx = V::hsum(xx), syy = V::hsum(yy);
    for (; i < n; ++i) {
      const T mx = mask[i] * x[i];
      sxy += mx * y[i];
      sxx += mx * x[i];
      syy += mask[i] * y[i] * y[i];
    }
    out[0] = sxy;
    out[1] = sxx;
    out[2] = syy;
  }
};

template <typename V>
constexpr KernelTable<typename V::T> make_vec_table() {
  using K = VecKernels<V>;
  return {&K::dot,         &K::axpy,          &K::gemm_nt,    &K::gemm_nn_acc,
          &K::gemm_tn_acc, &K::masked_minmax, &K::masked_dot3};
}

}  // namespace authid::simd::detail
