// Copyright 2026 The unitrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unitrans/numerics/kernels.hpp"

#include <algorithm>
#include <vector>

namespace unitrans::numerics::kernels {

namespace {

// Register tile: kRows rows of C by kCols<T> columns, accumulated over the
// whole reduction before it is written back.
constexpr std::size_t kRows = 4;
template <typename T>
constexpr std::size_t kCols = 128 / sizeof(T);

template <typename T>
void tile_full(std::size_t k, std::size_t n, const T* __restrict a, std::size_t lda,
               const T* __restrict b, T* __restrict c) {
  constexpr std::size_t nc = kCols<T>;
  T acc[kRows][nc];
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t j = 0; j < nc; ++j) acc[r][j] = c[r * n + j];
  }
  for (std::size_t p = 0; p < k; ++p) {
    const T* brow = b + p * n;
    for (std::size_t r = 0; r < kRows; ++r) {
      const T av = a[r * lda + p];
      for (std::size_t j = 0; j < nc; ++j) acc[r][j] += av * brow[j];
    }
  }
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t j = 0; j < nc; ++j) c[r * n + j] = acc[r][j];
  }
}

template <typename T>
void tile_edge(std::size_t rows, std::size_t cols, std::size_t k, std::size_t n,
               const T* __restrict a, std::size_t lda, const T* __restrict b, T* __restrict c) {
  for (std::size_t r = 0; r < rows; ++r) {
    T* crow = c + r * n;
    for (std::size_t p = 0; p < k; ++p) {
      const T av = a[r * lda + p];
      const T* brow = b + p * n;
      for (std::size_t j = 0; j < cols; ++j) crow[j] += av * brow[j];
    }
  }
}

}  // namespace

template <typename T>
void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const T* __restrict a,
             const T* __restrict b, T* __restrict c, bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, T{0});
  constexpr std::size_t nc = kCols<T>;
  const std::size_t m_full = m - m % kRows;
  const std::size_t n_full = n - n % nc;
  for (std::size_t i = 0; i < m_full; i += kRows) {
    for (std::size_t j = 0; j < n_full; j += nc) {
      tile_full(k, n, a + i * k, k, b + j, c + i * n + j);
    }
    if (n_full < n) tile_edge(kRows, n - n_full, k, n, a + i * k, k, b + n_full, c + i * n + n_full);
  }
  if (m_full < m) tile_edge(m - m_full, n, k, n, a + m_full * k, k, b, c + m_full * n);
}

template <typename T>
void gemm_nt(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b, T* c,
             bool accumulate) {
  std::vector<T> bt(k * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < k; ++p) bt[p * n + j] = b[j * k + p];
  }
  gemm_nn(m, k, n, a, bt.data(), c, accumulate);
}

template <typename T>
void gemm_tn(std::size_t m, std::size_t k, std::size_t n, const T* __restrict a,
             const T* __restrict b, T* __restrict c, bool accumulate) {
  if (!accumulate) std::fill(c, c + k * n, T{0});
  constexpr std::size_t nc = kCols<T>;
  const std::size_t k_full = k - k % kRows;
  const std::size_t n_full = n - n % nc;
  for (std::size_t p = 0; p < k_full; p += kRows) {
    for (std::size_t j = 0; j < n_full; j += nc) {
      T acc[kRows][nc];
      for (std::size_t r = 0; r < kRows; ++r) {
        for (std::size_t q = 0; q < nc; ++q) acc[r][q] = c[(p + r) * n + j + q];
      }
      for (std::size_t i = 0; i < m; ++i) {
        const T* brow = b + i * n + j;
        const T* arow = a + i * k + p;
        for (std::size_t r = 0; r < kRows; ++r) {
          const T av = arow[r];
          for (std::size_t q = 0; q < nc; ++q) acc[r][q] += av * brow[q];
        }
      }
      for (std::size_t r = 0; r < kRows; ++r) {
        for (std::size_t q = 0; q < nc; ++q) c[(p + r) * n + j + q] = acc[r][q];
      }
    }
    if (n_full < n) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < kRows; ++r) {
          const T av = a[i * k + p + r];
          for (std::size_t q = n_full; q < n; ++q) c[(p + r) * n + q] += av * b[i * n + q];
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = k_full; p < k; ++p) {
      const T av = a[i * k + p];
      for (std::size_t q = 0; q < n; ++q) c[p * n + q] += av * b[i * n + q];
    }
  }
}

template void gemm_nn<float>(std::size_t, std::size_t, std::size_t, const float*, const float*,
                             float*, bool);
template void gemm_nn<double>(std::size_t, std::size_t, std::size_t, const double*,
                              const double*, double*, bool);
template void gemm_nt<float>(std::size_t, std::size_t, std::size_t, const float*, const float*,
                             float*, bool);
template void gemm_nt<double>(std::size_t, std::size_t, std::size_t, const double*,
                              const double*, double*, bool);
template void gemm_tn<float>(std::size_t, std::size_t, std::size_t, const float*, const float*,
                             float*, bool);
template void gemm_tn<double>(std::size_t, std::size_t, std::size_t, const double*,
                              const double*, double*, bool);

}  // namespace unitrans::numerics::kernels
