#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cqg {

/// Dense row-major matrix of exact rationals. Entries are kept canonical.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<mpq_class> entries);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<mpq_class>& data() const { return data_; }

  RationalMatrix transposed() const;
  bool is_symmetric() const;
  std::vector<double> to_doubles() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const mpq_class& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Indices of a maximal linearly independent prefix-greedy set of rows,
/// found by fraction-free elimination over the integers.
std::vector<std::size_t> independent_rows(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Exact inverse; throws ArgumentError when singular or non-square.
RationalMatrix inverse(const RationalMatrix& m);

/// Moore-Penrose pseudo-inverse of a symmetric positive semidefinite
/// matrix via a full-rank factorisation on an independent row set.
RationalMatrix pseudo_inverse_psd(const RationalMatrix& g);

/// Exact determinant by rational Gaussian elimination.
mpq_class determinant(const RationalMatrix& m);

}  // namespace cqg
