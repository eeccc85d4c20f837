#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/morphism.hpp"
#include "cqg/rational_matrix.hpp"
#include "cqg/word.hpp"

namespace cqg {

/// A unital linear functional on the word algebra of `group`, evaluated
/// on words and extended linearly to WordSums. Copies share the evaluator.
class StateOracle {
 public:
  using Eval = std::function<Scalar(const Word&)>;

  StateOracle(std::string label, GroupSpec group, Eval eval);

  const std::string& label() const { return label_; }
  const GroupSpec& group() const { return group_; }

  Scalar operator()(const Word& w) const { return (*eval_)(w); }
  Scalar operator()(const WordSum& s) const;

 private:
  std::string label_;
  GroupSpec group_;
  std::shared_ptr<const Eval> eval_;
};

/// Adds a thread-safe word cache in front of `s`.
StateOracle memoize(const StateOracle& s);

StateOracle counit_state(const GroupSpec& group);

/// Point evaluation at a classical matrix (row-major n x n, real entries):
/// u_ij -> g_ij. A character of C(G) whenever g lies in the classical group.
StateOracle character_state(const GroupSpec& group, const RationalMatrix& g);
StateOracle character_state(const GroupSpec& group, const std::vector<double>& g);

/// Convex combination sum_i w_i s_i; weights must sum to 1.
StateOracle mixture(const std::vector<StateOracle>& states, const std::vector<Scalar>& weights);

/// (phi (x) psi) Delta.
StateOracle convolve(const StateOracle& phi, const StateOracle& psi);

/// psi o pi, a state on pi's source.
StateOracle pullback(const StateOracle& psi, const Morphism& pi);

/// Free product of states on non-free-product groups, evaluated by the
/// centering recursion; lives on free(g_1, ..., g_r).
StateOracle free_product_state(const std::vector<StateOracle>& factors);

/// Entry (i, j) = phi(u_{i1 j1}^{e1} ... u_{id jd}^{ed}); tuples indexed in
/// mixed-radix order with the first letter most significant.
class TransferMatrix {
 public:
  TransferMatrix(GroupSpec group, std::vector<bool> pattern, RationalMatrix exact);
  TransferMatrix(GroupSpec group, std::vector<bool> pattern, std::vector<double> values);

  const GroupSpec& group() const { return group_; }
  std::size_t degree() const { return pattern_.size(); }
  const std::vector<bool>& pattern() const { return pattern_; }
  std::size_t dim() const { return dim_; }
  bool is_exact() const { return exact_.has_value(); }
  const RationalMatrix& exact() const;
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t r, std::size_t c) const { return values_[r * dim_ + c]; }

  /// Exact when both operands are exact; binary64 through the kernels otherwise.
  friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);
  TransferMatrix to_float() const;

 private:
  GroupSpec group_;
  std::vector<bool> pattern_;
  std::size_t dim_ = 0;
  std::optional<RationalMatrix> exact_;
  std::vector<double> values_;
};

/// The word whose value sits at (row, col) of a transfer matrix.
Word transfer_word(const GroupSpec& group, const std::vector<bool>& pattern, std::size_t row,
                   std::size_t col);

TransferMatrix transfer_matrix(const StateOracle& phi, std::size_t degree,
                               std::vector<bool> pattern);
/// Unstarred pattern of length `degree`.
TransferMatrix transfer_matrix(const StateOracle& phi, std::size_t degree);

/// transfer(phi)^k by repeated squaring.
TransferMatrix convolution_power(const StateOracle& phi, std::size_t k, std::size_t degree,
                                 std::vector<bool> pattern);

/// Max-abs entry distance; exact when both are exact.
Scalar max_abs_difference(const TransferMatrix& a, const TransferMatrix& b);

/// Max of |T_h T_phi - T_h| and |T_phi T_h - T_h| (entrywise).
Scalar check_invariance(const StateOracle& h, const StateOracle& phi, std::size_t degree,
                        std::vector<bool> pattern);

struct ConvergenceOptions {
  std::size_t degree = 4;
  std::vector<bool> pattern;  // empty: unstarred
  double tolerance = 1e-6;
  std::size_t max_iter = 500;
  bool spectrum = true;
};

struct ConvergenceReport {
  std::size_t degree = 0;
  std::vector<bool> pattern;
  std::size_t iterations = 0;
  std::vector<double> residuals;  // max |(T1 T2)^k - H|, k = 1..iterations
  bool converged = false;
  double tolerance = 0.0;
  bool first_step_exact = false;
  /// Spectral radius of T1 T2 - H, i.e. of T1 T2 off the range of H.
  std::optional<double> subleading_modulus;
  /// Conservative accumulated rounding bound at the last float iterate.
  double float_error_bound = 0.0;
  /// Residuals non-increasing after the first step.
  bool monotone_tail = true;
};

ConvergenceReport converge_to_haar(const StateOracle& tau1, const StateOracle& tau2,
                                   const StateOracle& haar, const ConvergenceOptions& options);

}  // namespace cqg
