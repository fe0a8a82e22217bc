#pragma once

#include "cicy/exact/integer.hpp"
#include "cicy/exact/rational.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  assert(a.size() == b.size());
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s.add_product(a[i], b[i]);
  return s;
}

/// gcd of all entries (0 for the zero vector).
inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    g = gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

/// Divides by the content so the entries have gcd 1; the zero vector is unchanged.
inline IntVector primitive(IntVector v) {
  Integer g = content(v);
  if (g.is_zero() || g.is_one()) return v;
  for (auto& x : v) x /= g;
  return v;
}

inline bool is_zero_vector(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline IntVector scaled(const IntVector& a, const Integer& k) {
  IntVector r(a);
  for (auto& x : r) x *= k;
  return r;
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s + ")";
}

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      for (long long x : row) data_.emplace_back(x);
    }
  }
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<long>(i * cols));
    }
    return m;
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const Integer> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] IntVector row_vector(std::size_t i) const {
    auto r = row(i);
    return IntVector(r.begin(), r.end());
  }
  [[nodiscard]] std::vector<IntVector> row_vectors() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j).add_product(aik, b(k, j));
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant via fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = v / prev;
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

/// Rank over the rationals (fraction-free elimination).
inline std::size_t rank(IntMatrix a) {
  std::size_t r = 0;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c).is_zero()) ++p;
    if (p == m) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a(i, c).is_zero()) continue;
      Integer f = a(i, c), g = a(r, c);
      Integer d = gcd(f, g);
      f /= d;
      g /= d;
      for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows, cols));
}

struct HermiteResult {
  IntMatrix h;  ///< row-style Hermite normal form
  IntMatrix u;  ///< unimodular transform with h = u * a
};

/// Row Hermite normal form.
///
/// H is in row echelon form with positive pivots and entries above each pivot
/// reduced into [0, pivot). The zero matrix returns itself with U = identity.
inline HermiteResult hnf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(m);
  auto combine = [&](IntMatrix& mat, std::size_t p, std::size_t i, const Integer& x,
                     const Integer& y, const Integer& s, const Integer& t) {
    // row p <- x*row_p + y*row_i ; row i <- s*row_p + t*row_i
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      Integer rp = mat(p, j), ri = mat(i, j);
      Integer np = x * rp;
      np.add_product(y, ri);
      Integer ni = s * rp;
      ni.add_product(t, ri);
      mat(p, j) = std::move(np);
      mat(i, j) = std::move(ni);
    }
  };
  std::size_t pr = 0;
  for (std::size_t c = 0; c < n && pr < m; ++c) {
    for (std::size_t i = pr + 1; i < m; ++i) {
      if (h(i, c).is_zero()) continue;
      Integer pa = h(pr, c), pb = h(i, c);
      auto [g, x, y] = extended_gcd(pa, pb);
      Integer s = -(pb / g), t = pa / g;
      combine(h, pr, i, x, y, s, t);
      combine(u, pr, i, x, y, s, t);
    }
    if (h(pr, c).is_zero()) continue;
    if (h(pr, c).sign() < 0) {
      for (std::size_t j = 0; j < n; ++j) h(pr, j) = -h(pr, j);
      for (std::size_t j = 0; j < m; ++j) u(pr, j) = -u(pr, j);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q = floor_div(h(i, c), h(pr, c));
      if (q.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= q * h(pr, j);
      for (std::size_t j = 0; j < m; ++j) u(i, j) -= q * u(pr, j);
    }
    ++pr;
  }
  return {std::move(h), std::move(u)};
}

/// Canonical lattice basis (rows in Hermite normal form) of {x in Z^n : A x = 0}.
inline std::vector<IntVector> kernel_lattice_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  auto [h, u] = hnf(a.transpose());
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (is_zero_vector(h.row(i))) basis.push_back(u.row_vector(i));
  }
  if (basis.empty()) return basis;
  auto [hb, ub] = hnf(IntMatrix::from_rows(basis, n));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < hb.rows(); ++i)
    if (!is_zero_vector(hb.row(i))) out.push_back(hb.row_vector(i));
  return out;
}

/// Rational row echelon elimination. Returns pivot columns; `m` is reduced in place
/// to reduced row echelon form.
inline std::vector<std::size_t> rref(std::vector<RatVector>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Solves A x = b for square nonsingular A over the rationals; nullopt if singular.
inline std::optional<RatVector> solve(const IntMatrix& a, const IntVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: dimension mismatch");
  std::vector<RatVector> m(n, RatVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
    m[i][n] = Rational(b[i]);
  }
  auto piv = rref(m);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline IntVector primitive_integer(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.den());
  IntVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.num() * (l / x.den()));
  return primitive(std::move(r));
}

}  // namespace cicy
