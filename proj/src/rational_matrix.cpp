#include "cqg/rational_matrix.hpp"

#include <numeric>
#include <sstream>

#include "cqg/errors.hpp"

namespace cqg {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols,
                               std::vector<mpq_class> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ArgumentError("RationalMatrix: entry count does not match dimensions");
  }
  for (auto& e : data_) e.canonicalize();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

std::vector<double> RationalMatrix::to_doubles() const {
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].get_d();
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw ArgumentError("RationalMatrix: product shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  mpq_class t;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpq_class& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const mpq_class& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        mpq_mul(t.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
        c(i, j) += t;
      }
    }
  }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ArgumentError("RationalMatrix: sum shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ArgumentError("RationalMatrix: difference shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

RationalMatrix operator*(const mpq_class& s, const RationalMatrix& a) {
  RationalMatrix c = a;
  for (auto& e : c.data_) e *= s;
  return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Row scaled to integers with the gcd of its content removed.
std::vector<mpz_class> integer_row(const RationalMatrix& m, std::size_t r) {
  mpz_class l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
  }
  std::vector<mpz_class> row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    row[c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  return row;
}

void remove_content(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& v : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::vector<std::size_t> independent_rows(const RationalMatrix& m) {
  struct Pivoted {
    std::vector<mpz_class> row;
    std::size_t pivot;
  };
  std::vector<Pivoted> basis;
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = integer_row(m, r);
    for (const auto& b : basis) {
      if (sgn(row[b.pivot]) == 0) continue;
      mpz_class f = row[b.pivot];
      mpz_class p = b.row[b.pivot];
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = p * row[c] - f * b.row[c];
      remove_content(row);
    }
    std::size_t pivot = row.size();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (sgn(row[c]) != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot == row.size()) continue;
    // Clear the new pivot column from earlier basis rows to stay reduced.
    for (auto& b : basis) {
      if (sgn(b.row[pivot]) == 0) continue;
      mpz_class f = b.row[pivot];
      mpz_class p = row[pivot];
      for (std::size_t c = 0; c < row.size(); ++c) b.row[c] = p * b.row[c] - f * row[c];
      remove_content(b.row);
    }
    basis.push_back({std::move(row), pivot});
    chosen.push_back(r);
  }
  return chosen;
}

std::size_t rank(const RationalMatrix& m) { return independent_rows(m).size(); }

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) throw ArgumentError("inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const mpq_class p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      const mpq_class f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

RationalMatrix pseudo_inverse_psd(const RationalMatrix& g) {
  if (!g.is_symmetric()) throw ArgumentError("pseudo_inverse_psd: matrix is not symmetric");
  const std::size_t n = g.rows();
  if (n == 0) return {};
  const auto basis = independent_rows(g);
  if (basis.size() == n) return inverse(g);
  const std::size_t r = basis.size();
  if (r == 0) return RationalMatrix(n, n);

  // G = C * G_SS^{-1} * C^T with C = G[:, S]; then
  // G^+ = C (C^T C)^{-1} G_SS (C^T C)^{-1} C^T.
  RationalMatrix c(n, r);
  RationalMatrix gss(r, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) c(i, j) = g(i, basis[j]);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gss(i, j) = g(basis[i], basis[j]);
  const RationalMatrix ct = c.transposed();
  const RationalMatrix ctc_inv = inverse(ct * c);
  return c * (ctc_inv * gss * ctc_inv) * ct;
}

mpq_class determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  RationalMatrix a = m;
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      const mpq_class f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

}  // namespace cqg
