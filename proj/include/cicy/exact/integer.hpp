#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cicy {

/// Arbitrary-precision integer with an inline machine-word fast path.
///
/// Values that fit in int64 are stored inline; anything larger is promoted to
/// a shared, immutable boost::multiprecision::cpp_int. Every operation checks
/// for overflow and promotes, so results are always exact. Values are always
/// kept in canonical form: a big representation never holds a value that
/// would fit inline.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  constexpr Integer() noexcept = default;
  constexpr Integer(int v) noexcept : small_(v) {}
  constexpr Integer(long v) noexcept : small_(v) {}
  constexpr Integer(long long v) noexcept : small_(v) {}
  Integer(unsigned long v) { assign(Big(v)); }
  Integer(unsigned long long v) { assign(Big(v)); }
  explicit Integer(const Big& v) { assign(v); }
  explicit Integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
    assign(Big(s));
  }

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] bool fits_int64() const noexcept { return !big_; }
  [[nodiscard]] std::int64_t to_int64() const {
    if (big_) throw std::overflow_error("Integer does not fit in int64");
    return small_;
  }
  [[nodiscard]] Big to_big() const { return big_ ? *big_ : Big(small_); }

  [[nodiscard]] int sign() const noexcept {
    if (big_) return big_->sign();
    return (small_ > 0) - (small_ < 0);
  }
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }

  [[nodiscard]] std::string to_string() const {
    return big_ ? big_->str() : std::to_string(small_);
  }

  Integer& operator+=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign(to_big() + o.to_big());
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign(to_big() - o.to_big());
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign(to_big() * o.to_big());
    return *this;
  }
  /// Truncating division, matching built-in integer semantics.
  Integer& operator/=(const Integer& o) {
    if (o.is_zero()) throw std::domain_error("Integer division by zero");
    if (!big_ && !o.big_ && !(small_ == min64 && o.small_ == -1)) {
      small_ /= o.small_;
      return *this;
    }
    assign(to_big() / o.to_big());
    return *this;
  }
  Integer& operator%=(const Integer& o) {
    if (o.is_zero()) throw std::domain_error("Integer division by zero");
    if (!big_ && !o.big_) {
      small_ = (o.small_ == -1) ? 0 : small_ % o.small_;
      return *this;
    }
    assign(to_big() % o.to_big());
    return *this;
  }

  /// this += a * b without a temporary on the fast path.
  void add_product(const Integer& a, const Integer& b) {
    std::int64_t p, r;
    if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    assign(to_big() + a.to_big() * b.to_big());
  }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
  friend Integer operator-(const Integer& a) {
    if (!a.big_ && a.small_ != min64) return Integer(-a.small_);
    Integer r;
    r.assign(-a.to_big());
    return r;
  }

  friend bool operator==(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: a big value never equals an inline one
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    int c = a.to_big().compare(b.to_big());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) {
    return os << v.to_string();
  }

  [[nodiscard]] std::size_t hash() const noexcept {
    if (!big_) return std::hash<std::int64_t>{}(small_);
    return std::hash<std::string>{}(big_->str());
  }

 private:
  static constexpr std::int64_t min64 = std::numeric_limits<std::int64_t>::min();

  void assign(const Big& v) {
    if (v >= Big(std::numeric_limits<std::int64_t>::min()) &&
        v <= Big(std::numeric_limits<std::int64_t>::max())) {
      small_ = static_cast<std::int64_t>(v);
      big_.reset();
    } else {
      small_ = 0;
      big_ = std::make_shared<const Big>(v);
    }
  }

  std::int64_t small_ = 0;
  std::shared_ptr<const Big> big_;
};

inline Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  if (a.is_small() && b.is_small()) {
    std::int64_t x = a.to_int64(), y = b.to_int64();
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  return Integer(boost::multiprecision::gcd(a.to_big(), b.to_big()));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(a / gcd(a, b) * b);
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(a % b).is_zero() && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

/// Ceiling division (rounds toward positive infinity).
inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(a % b).is_zero() && ((a.sign() < 0) == (b.sign() < 0))) q += 1;
  return q;
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (!r.is_zero()) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r.sign() < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return Integer(0);
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= Integer(n - k + i);
    r /= Integer(i);
  }
  return r;
}

}  // namespace cicy

template <>
struct std::hash<cicy::Integer> {
  std::size_t operator()(const cicy::Integer& v) const noexcept { return v.hash(); }
};
