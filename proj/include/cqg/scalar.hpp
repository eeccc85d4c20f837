#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <variant>

namespace cqg {

/// A coefficient that is either an exact rational or a binary64 value.
/// Arithmetic between two exact operands stays exact; anything touching
/// a float operand yields a float.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(implicit)
  Scalar(int v) : value_(mpq_class(v)) {}   // NOLINT(implicit)
  Scalar(mpq_class v) : value_(std::move(v)) {  // NOLINT(implicit)
    std::get<mpq_class>(value_).canonicalize();
  }
  static Scalar real(double v) {
    Scalar s;
    s.value_ = v;
    return s;
  }
  static Scalar rational(long num, long den);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  bool is_zero() const;
  const mpq_class& exact() const;  // throws ArgumentError when float
  double to_double() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for exact pairs; bitwise-value equality otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "p/q" for exact values, shortest round-trip decimal for floats.
  std::string to_string() const;
  /// Decimal rendering with 17 significant digits.
  std::string to_decimal() const;

 private:
  std::variant<mpq_class, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace cqg
