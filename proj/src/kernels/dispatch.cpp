#include <atomic>
#include <stdexcept>

#include "cqg/kernels.hpp"

namespace cqg::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CQG_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

// -1: follow detection.
std::atomic<int> forced{-1};

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "?";
}

bool available(Isa isa) {
  if (isa == Isa::Scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa detected_isa() { return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  return f < 0 ? detected_isa() : static_cast<Isa>(f);
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !available(*isa))
    throw std::invalid_argument(std::string("kernel variant unavailable: ") + isa_name(*isa));
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n) {
  if (a.size() != m * k || b.size() != k * n || c.size() != m * n)
    throw std::invalid_argument("gemm: span sizes do not match dimensions");
#if defined(CQG_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::gemm(a.data(), b.data(), c.data(), m, k, n);
#endif
  scalar::gemm(a.data(), b.data(), c.data(), m, k, n);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
#if defined(CQG_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::max_abs_diff(a.data(), b.data(), a.size());
#endif
  return scalar::max_abs_diff(a.data(), b.data(), a.size());
}

}  // namespace cqg::kernels
