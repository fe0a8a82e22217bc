#pragma once

#include "cicy/exact/integer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cicy {

/// Thrown when a Laurent polynomial division leaves a nonzero remainder.
class NonExactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial in one variable t with integer coefficients; no trailing zeros are stored.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  UnivariatePoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  UnivariatePoly(std::initializer_list<long long> coeffs) {
    for (long long x : coeffs) c_.emplace_back(x);
    trim();
  }

  static UnivariatePoly monomial(Integer coeff, int degree) {
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return UnivariatePoly(std::move(c));
  }
  /// (1 - t)^k
  static UnivariatePoly one_minus_t_pow(int k) {
    std::vector<Integer> c(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) c[i] = (i % 2 ? -binomial(k, i) : binomial(k, i));
    return UnivariatePoly(std::move(c));
  }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] Integer coefficient(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Integer(0);
  }
  [[nodiscard]] const std::vector<Integer>& coefficients() const noexcept { return c_; }

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UnivariatePoly(std::move(c));
  }
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UnivariatePoly(std::move(c));
  }
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j].add_product(a.c_[i], b.c_[j]);
    return UnivariatePoly(std::move(c));
  }
  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

  /// Keeps terms of degree <= max_degree.
  [[nodiscard]] UnivariatePoly truncated(int max_degree) const {
    if (degree() <= max_degree) return *this;
    return UnivariatePoly(std::vector<Integer>(c_.begin(), c_.begin() + max_degree + 1));
  }

  [[nodiscard]] std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
      else if (c_[i].sign() < 0) s += "-";
      Integer a = abs(c_[i]);
      if (i == 0 || !a.is_one()) s += a.to_string();
      if (i >= 1) s += "t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Integer> c_;
};

enum class Axis { u, v };

/// Laurent polynomial in u, v with integer coefficients.
///
/// Stored densely over the smallest exponent box containing every nonzero term,
/// so two equal polynomials are structurally equal.
class LaurentBivariate {
 public:
  LaurentBivariate() = default;
  LaurentBivariate(long long constant) {
    if (constant != 0) *this = monomial(Integer(constant), 0, 0);
  }

  static LaurentBivariate monomial(Integer coeff, int u_exp, int v_exp) {
    LaurentBivariate p;
    if (coeff.is_zero()) return p;
    p.u0_ = u_exp;
    p.v0_ = v_exp;
    p.nu_ = p.nv_ = 1;
    p.c_.push_back(std::move(coeff));
    return p;
  }

  struct Term {
    int u;
    int v;
    Integer coeff;
  };
  static LaurentBivariate from_terms(const std::vector<Term>& terms) {
    if (terms.empty()) return {};
    int umin = terms[0].u, umax = terms[0].u, vmin = terms[0].v, vmax = terms[0].v;
    for (const auto& t : terms) {
      umin = std::min(umin, t.u);
      umax = std::max(umax, t.u);
      vmin = std::min(vmin, t.v);
      vmax = std::max(vmax, t.v);
    }
    LaurentBivariate p = zero_box(umin, vmin, umax - umin + 1, vmax - vmin + 1);
    for (const auto& t : terms) p.at(t.u, t.v) += t.coeff;
    p.trim();
    return p;
  }

  /// p(u^a v^b) for a univariate p(t).
  static LaurentBivariate substitute(const UnivariatePoly& p, int a, int b) {
    std::vector<Term> terms;
    for (int i = 0; i <= p.degree(); ++i)
      if (!p.coefficient(i).is_zero()) terms.push_back({a * i, b * i, p.coefficient(i)});
    return from_terms(terms);
  }

  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] int min_u() const noexcept { return u0_; }
  [[nodiscard]] int min_v() const noexcept { return v0_; }
  [[nodiscard]] int max_u() const noexcept { return u0_ + nu_ - 1; }
  [[nodiscard]] int max_v() const noexcept { return v0_ + nv_ - 1; }
  [[nodiscard]] bool is_polynomial() const noexcept { return is_zero() || (u0_ >= 0 && v0_ >= 0); }

  [[nodiscard]] Integer coefficient(int i, int j) const {
    if (i < u0_ || i >= u0_ + nu_ || j < v0_ || j >= v0_ + nv_) return Integer(0);
    return c_[idx(i, j)];
  }

  [[nodiscard]] std::vector<Term> terms() const {
    std::vector<Term> out;
    for (int i = 0; i < nu_; ++i)
      for (int j = 0; j < nv_; ++j) {
        const Integer& c = c_[static_cast<std::size_t>(i * nv_ + j)];
        if (!c.is_zero()) out.push_back({u0_ + i, v0_ + j, c});
      }
    return out;
  }
  [[nodiscard]] std::size_t term_count() const {
    return static_cast<std::size_t>(
        std::count_if(c_.begin(), c_.end(), [](const Integer& c) { return !c.is_zero(); }));
  }

  LaurentBivariate& operator+=(const LaurentBivariate& o) { return accumulate(o, false); }
  LaurentBivariate& operator-=(const LaurentBivariate& o) { return accumulate(o, true); }

  friend LaurentBivariate operator+(LaurentBivariate a, const LaurentBivariate& b) { return a += b; }
  friend LaurentBivariate operator-(LaurentBivariate a, const LaurentBivariate& b) { return a -= b; }
  friend LaurentBivariate operator-(const LaurentBivariate& a) {
    LaurentBivariate r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend LaurentBivariate operator*(const LaurentBivariate& a, const LaurentBivariate& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LaurentBivariate r = zero_box(a.u0_ + b.u0_, a.v0_ + b.v0_, a.nu_ + b.nu_ - 1, a.nv_ + b.nv_ - 1);
    for (int i = 0; i < a.nu_; ++i)
      for (int j = 0; j < a.nv_; ++j) {
        const Integer& ca = a.c_[static_cast<std::size_t>(i * a.nv_ + j)];
        if (ca.is_zero()) continue;
        for (int k = 0; k < b.nu_; ++k) {
          Integer* out = &r.c_[static_cast<std::size_t>((i + k) * r.nv_ + j)];
          const Integer* in = &b.c_[static_cast<std::size_t>(k * b.nv_)];
          for (int l = 0; l < b.nv_; ++l)
            if (!in[l].is_zero()) out[l].add_product(ca, in[l]);
        }
      }
    r.trim();
    return r;
  }
  LaurentBivariate& operator*=(const LaurentBivariate& o) { return *this = *this * o; }

  friend LaurentBivariate operator*(LaurentBivariate a, const Integer& k) {
    if (k.is_zero()) return {};
    for (auto& c : a.c_) c *= k;
    return a;
  }

  /// Multiplies by u^a v^b.
  [[nodiscard]] LaurentBivariate shifted(int a, int b) const {
    LaurentBivariate r = *this;
    if (!r.is_zero()) {
      r.u0_ += a;
      r.v0_ += b;
    }
    return r;
  }

  [[nodiscard]] LaurentBivariate pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power of a Laurent polynomial");
    LaurentBivariate r(1), base = *this;
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  friend bool operator==(const LaurentBivariate& a, const LaurentBivariate& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.u0_ == b.u0_ && a.v0_ == b.v0_ && a.nu_ == b.nu_ && a.nv_ == b.nv_ && a.c_ == b.c_;
  }

  /// Value at u = v = 1.
  [[nodiscard]] Integer evaluate_at_one() const {
    Integer s = 0;
    for (const auto& c : c_) s += c;
    return s;
  }

  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& t : terms()) {
      if (!s.empty()) s += t.coeff.sign() > 0 ? " + " : " - ";
      else if (t.coeff.sign() < 0) s += "-";
      Integer a = abs(t.coeff);
      bool bare = t.u == 0 && t.v == 0;
      if (bare || !a.is_one()) s += a.to_string();
      auto var = [&](const char* name, int e) {
        if (e == 0) return;
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
      };
      var("u", t.u);
      var("v", t.v);
    }
    return s;
  }

 private:
  static LaurentBivariate zero_box(int u0, int v0, int nu, int nv) {
    LaurentBivariate p;
    p.u0_ = u0;
    p.v0_ = v0;
    p.nu_ = nu;
    p.nv_ = nv;
    p.c_.assign(static_cast<std::size_t>(nu * nv), Integer(0));
    return p;
  }
  [[nodiscard]] std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>((i - u0_) * nv_ + (j - v0_));
  }
  Integer& at(int i, int j) { return c_[idx(i, j)]; }

  LaurentBivariate& accumulate(const LaurentBivariate& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = subtract ? -o : o;
      return *this;
    }
    if (o.u0_ < u0_ || o.v0_ < v0_ || o.max_u() > max_u() || o.max_v() > max_v()) {
      int nu0 = std::min(u0_, o.u0_), nv0 = std::min(v0_, o.v0_);
      int nu1 = std::max(max_u(), o.max_u()), nv1 = std::max(max_v(), o.max_v());
      LaurentBivariate grown = zero_box(nu0, nv0, nu1 - nu0 + 1, nv1 - nv0 + 1);
      for (int i = 0; i < nu_; ++i)
        for (int j = 0; j < nv_; ++j)
          grown.at(u0_ + i, v0_ + j) = std::move(c_[static_cast<std::size_t>(i * nv_ + j)]);
      *this = std::move(grown);
    }
    for (int i = 0; i < o.nu_; ++i)
      for (int j = 0; j < o.nv_; ++j) {
        const Integer& c = o.c_[static_cast<std::size_t>(i * o.nv_ + j)];
        if (c.is_zero()) continue;
        if (subtract) at(o.u0_ + i, o.v0_ + j) -= c;
        else at(o.u0_ + i, o.v0_ + j) += c;
      }
    trim();
    return *this;
  }

  void trim() {
    auto row_zero = [&](int i) {
      for (int j = 0; j < nv_; ++j)
        if (!c_[static_cast<std::size_t>(i * nv_ + j)].is_zero()) return false;
      return true;
    };
    auto col_zero = [&](int j, int ib, int ie) {
      for (int i = ib; i < ie; ++i)
        if (!c_[static_cast<std::size_t>(i * nv_ + j)].is_zero()) return false;
      return true;
    };
    int ib = 0, ie = nu_;
    while (ib < ie && row_zero(ib)) ++ib;
    while (ie > ib && row_zero(ie - 1)) --ie;
    if (ib == ie) {
      *this = LaurentBivariate();
      return;
    }
    int jb = 0, je = nv_;
    while (jb < je && col_zero(jb, ib, ie)) ++jb;
    while (je > jb && col_zero(je - 1, ib, ie)) --je;
    if (ib == 0 && ie == nu_ && jb == 0 && je == nv_) return;
    LaurentBivariate t = zero_box(u0_ + ib, v0_ + jb, ie - ib, je - jb);
    for (int i = ib; i < ie; ++i)
      for (int j = jb; j < je; ++j)
        t.c_[static_cast<std::size_t>((i - ib) * t.nv_ + (j - jb))] =
            std::move(c_[static_cast<std::size_t>(i * nv_ + j)]);
    *this = std::move(t);
  }

  int u0_ = 0;
  int v0_ = 0;
  int nu_ = 0;
  int nv_ = 0;
  std::vector<Integer> c_;
};

/// Negates every exponent on the chosen axis (u -> 1/u or v -> 1/v).
inline LaurentBivariate laurent_substitute(const LaurentBivariate& p, Axis which) {
  std::vector<LaurentBivariate::Term> terms = p.terms();
  for (auto& t : terms) (which == Axis::u ? t.u : t.v) = -(which == Axis::u ? t.u : t.v);
  return LaurentBivariate::from_terms(terms);
}

/// Negates both exponents (u -> 1/u, v -> 1/v).
inline LaurentBivariate invert_both(const LaurentBivariate& p) {
  std::vector<LaurentBivariate::Term> terms = p.terms();
  for (auto& t : terms) {
    t.u = -t.u;
    t.v = -t.v;
  }
  return LaurentBivariate::from_terms(terms);
}

/// Exact quotient p / q in the Laurent ring; throws NonExactDivision otherwise.
inline LaurentBivariate laurent_divide_exact(const LaurentBivariate& p, const LaurentBivariate& q) {
  if (q.is_zero()) throw std::domain_error("Laurent division by zero");
  if (p.is_zero()) return {};
  // The quotient's exponent box is forced: extreme degrees add under multiplication.
  const int qu_lo = p.min_u() - q.min_u(), qu_hi = p.max_u() - q.max_u();
  const int qv_lo = p.min_v() - q.min_v(), qv_hi = p.max_v() - q.max_v();
  if (qu_lo > qu_hi || qv_lo > qv_hi) throw NonExactDivision("quotient exponent box is empty");
  // Leading term of q in lex order (u first, then v).
  const int lu = q.max_u();
  int lv = q.max_v();
  while (q.coefficient(lu, lv).is_zero()) --lv;
  const Integer lc = q.coefficient(lu, lv);

  std::vector<LaurentBivariate::Term> quotient;
  LaurentBivariate rem = p;
  while (!rem.is_zero()) {
    const int ru = rem.max_u();
    int rv = rem.max_v();
    while (rem.coefficient(ru, rv).is_zero()) --rv;
    const Integer rc = rem.coefficient(ru, rv);
    if (!(rc % lc).is_zero()) throw NonExactDivision("coefficient does not divide exactly");
    const int tu = ru - lu, tv = rv - lv;
    if (tu < qu_lo || tu > qu_hi || tv < qv_lo || tv > qv_hi)
      throw NonExactDivision("remainder is nonzero");
    Integer tc = rc / lc;
    rem -= q.shifted(tu, tv) * tc;
    quotient.push_back({tu, tv, std::move(tc)});
  }
  return LaurentBivariate::from_terms(quotient);
}

}  // namespace cicy
