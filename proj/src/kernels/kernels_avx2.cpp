#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "cqg/kernels.hpp"

namespace cqg::kernels::avx2 {

namespace {
constexpr std::size_t kRowBlock = 4;
}

// 4-row register block: each B row is loaded once per four rows of C.
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  const std::size_t n4 = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i + kRowBlock <= m; i += kRowBlock) {
    double* c0 = c + (i + 0) * n;
    double* c1 = c + (i + 1) * n;
    double* c2 = c + (i + 2) * n;
    double* c3 = c + (i + 3) * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double s0 = a[(i + 0) * k + p], s1 = a[(i + 1) * k + p];
      const double s2 = a[(i + 2) * k + p], s3 = a[(i + 3) * k + p];
      if (s0 == 0.0 && s1 == 0.0 && s2 == 0.0 && s3 == 0.0) continue;
      const __m256d a0 = _mm256_set1_pd(s0), a1 = _mm256_set1_pd(s1);
      const __m256d a2 = _mm256_set1_pd(s2), a3 = _mm256_set1_pd(s3);
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n4; j += 4) {
        const __m256d bv = _mm256_loadu_pd(brow + j);
        _mm256_storeu_pd(c0 + j, _mm256_fmadd_pd(a0, bv, _mm256_loadu_pd(c0 + j)));
        _mm256_storeu_pd(c1 + j, _mm256_fmadd_pd(a1, bv, _mm256_loadu_pd(c1 + j)));
        _mm256_storeu_pd(c2 + j, _mm256_fmadd_pd(a2, bv, _mm256_loadu_pd(c2 + j)));
        _mm256_storeu_pd(c3 + j, _mm256_fmadd_pd(a3, bv, _mm256_loadu_pd(c3 + j)));
      }
      for (std::size_t j = n4; j < n; ++j) {
        c0[j] = std::fma(s0, brow[j], c0[j]);
        c1[j] = std::fma(s1, brow[j], c1[j]);
        c2[j] = std::fma(s2, brow[j], c2[j]);
        c3[j] = std::fma(s3, brow[j], c3[j]);
      }
    }
  }
  for (; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = a[i * k + p];
      if (s == 0.0) continue;
      const __m256d av = _mm256_set1_pd(s);
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n4; j += 4) {
        _mm256_storeu_pd(crow + j, _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j),
                                                   _mm256_loadu_pd(crow + j)));
      }
      for (std::size_t j = n4; j < n; ++j) crow[j] = std::fma(s, brow[j], crow[j]);
    }
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t len4 = len & ~std::size_t{3};
  for (std::size_t i = 0; i < len4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (std::size_t i = len4; i < len; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace cqg::kernels::avx2
