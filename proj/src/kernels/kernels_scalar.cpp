#include <algorithm>
#include <cmath>

#include "cqg/kernels.hpp"

namespace cqg::kernels::scalar {

void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace cqg::kernels::scalar
