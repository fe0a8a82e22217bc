#pragma once

#include "cicy/exact/integer.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cicy {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(long v) : num_(v) {}
  Rational(long long v) : num_(v) {}
  Rational(Integer v) : num_(std::move(v)) {}
  Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  [[nodiscard]] const Integer& num() const noexcept { return num_; }
  [[nodiscard]] const Integer& den() const noexcept { return den_; }
  [[nodiscard]] bool is_integer() const noexcept { return den_.is_one(); }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] int sign() const noexcept { return num_.sign(); }

  [[nodiscard]] Integer floor() const { return floor_div(num_, den_); }
  [[nodiscard]] Integer ceil() const { return ceil_div(num_, den_); }

  Rational& operator+=(const Rational& o) {
    if (den_.is_one() && o.den_.is_one()) {
      num_ += o.num_;
      return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    if (den_.is_one() && o.den_.is_one()) {
      num_ -= o.num_;
      return *this;
    }
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    if (!den_.is_one()) normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    Integer n = num_ * o.den_;
    Integer d = den_ * o.num_;
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r = a;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  [[nodiscard]] std::string to_string() const {
    return den_.is_one() ? num_.to_string() : num_.to_string() + "/" + den_.to_string();
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (!g.is_one() && !g.is_zero()) {
      num_ /= g;
      den_ /= g;
    }
    if (num_.is_zero()) den_ = 1;
  }

  Integer num_ = 0;
  Integer den_ = 1;
};

}  // namespace cicy
