#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/morphism.hpp"
#include "cqg/states.hpp"
#include "cqg/word.hpp"

namespace cqg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct GeneratorKey {
  std::uint8_t factor = 0;
  std::uint8_t row = 1;
  std::uint8_t col = 1;
  auto operator<=>(const GeneratorKey&) const = default;
};
using GeneratorImages = std::map<GeneratorKey, CMatrix>;

enum class UcpKind { Rep, ClassicalSample, Compressed, Convolved, Pullback, DirectSum };

namespace detail {
struct UcpImpl;
}

/// Unital completely positive map from the word algebra of `group` into
/// k x k matrices. Immutable; copies share structure.
class UcpMap {
 public:
  explicit UcpMap(std::shared_ptr<const detail::UcpImpl> impl);

  UcpKind kind() const;
  const GroupSpec& group() const;
  std::size_t dim() const;
  /// Diagonal maps (sampling maps and composites of them) can be
  /// evaluated as vectors far beyond the dense size cap.
  bool is_diagonal() const;

  CMatrix evaluate(const Word& w) const;
  CMatrix evaluate(const WordSum& s) const;
  /// Diagonal of evaluate(w); only for diagonal maps.
  CVector evaluate_diagonal(const Word& w) const;
  CVector evaluate_diagonal(const WordSum& s) const;

  /// tr_k(theta(x)), normalised trace. May use tensor factorisation for
  /// convolved maps too large to materialise.
  Complex trace(const Word& w) const;
  Complex trace(const WordSum& s) const;
  /// tr_k(theta(x)^* theta(y)).
  Complex pair_trace(const WordSum& x, const WordSum& y) const;
  /// Normalised trace of the materialised matrix, never factorised.
  Complex materialized_trace(const WordSum& s) const;

  const detail::UcpImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const detail::UcpImpl> impl_;
};

/// Max operator-norm residual of the defining relations (and of
/// self-adjointness for O/S entries) under the generator images.
double validate_relations(const GroupSpec& group, const GeneratorImages& images);

/// Representation by generator images; rejects residual above `tolerance`.
UcpMap rep_ucp(const GroupSpec& group, GeneratorImages images, double tolerance = 1e-10);

/// O_2^+ flip family: u_11, u_22 -> 0 and u_12, u_21 -> V, V = V^* = V^{-1}.
GeneratorImages flip_family_images(const CMatrix& v);
/// One-dimensional character at a classical (real) matrix, row-major.
GeneratorImages character_images(const GroupSpec& group, const std::vector<double>& g);

/// Diagonal quadrature map for a classical group: O_n Haar samples by QR of
/// seeded Gaussians, S_m uniform (full enumeration when m! divides the
/// count), the torus at the count-th roots of unity.
UcpMap classical_sampling_ucp(const GroupSpec& group, std::size_t sample_count,
                              std::uint64_t seed);

/// V^* theta(.) V for an isometry V (theta.dim() x k).
UcpMap compress_ucp(const UcpMap& inner, const CMatrix& isometry);
/// (theta1 (x) theta2) Delta.
UcpMap convolve_ucp(const UcpMap& first, const UcpMap& second);
/// theta o pi.
UcpMap pullback_ucp(const UcpMap& inner, const Morphism& pi);
/// Block-diagonal sum; the normalised trace weights blocks by size.
UcpMap direct_sum_ucp(const std::vector<UcpMap>& blocks);

/// tr o theta as a state (real part; imaginary residue above 1e-12 throws).
StateOracle trace_state(const UcpMap& theta);

/// tr(theta(b^* b)) - tr(theta(b)^* theta(b)).
double defect(const UcpMap& theta, const WordSum& b);

struct DefectGram {
  CMatrix gram;  // (a, b) = tr(theta(x_a^* x_b) - theta(x_a)^* theta(x_b))
  double min_eigenvalue = 0.0;
  double worst_cauchy_schwarz = 0.0;  // max |<x,y>| - sqrt(<x,x><y,y>)
  bool cauchy_schwarz_ok = true;      // every pair within 1e-9
};
DefectGram defect_gram(const UcpMap& theta, const std::vector<WordSum>& words);

struct DefectReport {
  std::vector<WordSum> words;
  std::vector<double> defects;
  double gram_min_eigenvalue = 0.0;
  std::vector<Complex> trace_values;
};
DefectReport defect_report(const UcpMap& theta, const std::vector<WordSum>& words);

struct FactorizationReport {
  std::vector<std::size_t> dims;
  std::vector<double> trace_errors;  // max_w |tr theta(w) - tau(w)|
  std::vector<double> defects;       // max_w defect(theta, w)
  bool trace_errors_decreasing = false;
  bool defects_decreasing = false;
  bool witnesses = false;
};
FactorizationReport factorization_report(const std::vector<UcpMap>& net,
                                         const StateOracle& target_trace,
                                         const std::vector<WordSum>& words,
                                         double trace_threshold = 0.05,
                                         double defect_threshold = 1e-10);

/// Haar-distributed orthogonal matrix (row-major) from a seeded stream.
std::vector<double> haar_orthogonal(std::uint32_t n, std::uint64_t seed);
/// Random real k x m isometry (k >= m). Real so that traces of words stay real.
CMatrix random_isometry(std::size_t k, std::size_t m, std::uint64_t seed);
/// Random real symmetric orthogonal V = Q diag(+-1) Q^T.
CMatrix random_self_adjoint_unitary(std::size_t k, std::uint64_t seed);

}  // namespace cqg
