#include "cqg/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cqg/errors.hpp"

namespace cqg {

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  mpq_class q(num, den);
  return Scalar(std::move(q));
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_)) == 0;
  return std::get<double>(value_) == 0.0;
}

const mpq_class& Scalar::exact() const {
  if (!is_exact()) throw ArgumentError("scalar is not exact");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw ArgumentError("division by zero scalar");
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return Scalar::real(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  }
  return a.to_double() == b.to_double();
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, end);
}

std::string Scalar::to_decimal() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double());
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace cqg
