#pragma once

#include <cstddef>
#include <optional>
#include <span>

// Dense binary64 kernels behind the float transfer-matrix powering.
// Every kernel has a portable scalar reference; vector variants are chosen
// at runtime from what the CPU reports and must agree with the reference
// up to FMA rounding.

namespace cqg::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
/// Best variant both compiled in and supported by this CPU.
Isa detected_isa();
/// Variant used by the dispatching entry points.
Isa active_isa();
/// Pins dispatch to `isa` (nullopt restores detection). Throws
/// std::invalid_argument when the variant is unavailable.
void force_isa(std::optional<Isa> isa);
bool available(Isa isa);

/// C = A * B, row-major; A is m x k, B is k x n, C is m x n.
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n);
/// max_i |a_i - b_i|.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

namespace scalar {
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace scalar

#if defined(CQG_HAVE_AVX2_KERNELS)
namespace avx2 {
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace avx2
#endif

}  // namespace cqg::kernels
