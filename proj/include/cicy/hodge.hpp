#pragma once

#include "cicy/cone.hpp"
#include "cicy/exact/polynomial.hpp"
#include "cicy/nef_partition.hpp"

#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace cicy {

class RecursionInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPolynomial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeHodge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExponentOutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// B-polynomials of the intervals of an Eulerian poset, memoized by endpoints.
///
/// B([x,y]) is solved from the defining relation: moving the two unknown terms to
/// one side leaves B(u,v) - B(1/u,1/v)(uv)^d = R, and the v-degrees of the two
/// unknowns lie on opposite sides of d/2. The solution is checked against all of R.
class BPolynomials {
 public:
  explicit BPolynomials(const FacePoset& p) : p_(p), memo_(p.size()) {
    const int top = p.rank(p.top());
    const auto v_minus_u = LaurentBivariate::monomial(Integer(1), 0, 1) - LaurentBivariate::monomial(Integer(1), 1, 0);
    const auto uv_minus_1 = LaurentBivariate::monomial(Integer(1), 1, 1) - LaurentBivariate(1);
    v_minus_u_.push_back(LaurentBivariate(1));
    uv_minus_1_.push_back(LaurentBivariate(1));
    for (int k = 1; k <= top; ++k) {
      v_minus_u_.push_back(v_minus_u_.back() * v_minus_u);
      uv_minus_1_.push_back(uv_minus_1_.back() * uv_minus_1);
    }
  }

  const LaurentBivariate& operator()(std::size_t x, std::size_t y) {
    auto it = memo_[x].find(y);
    if (it != memo_[x].end()) return it->second;
    if (!p_.leq(x, y)) throw std::invalid_argument("B-polynomial: not an interval");
    auto b = solve(x, y);
    return memo_[x].emplace(y, std::move(b)).first->second;
  }

  [[nodiscard]] std::size_t cached() const {
    std::size_t n = 0;
    for (const auto& m : memo_) n += m.size();
    return n;
  }

 private:
  LaurentBivariate solve(std::size_t x, std::size_t y) {
    const int d = p_.rank(y) - p_.rank(x);
    if (d == 0) return LaurentBivariate(1);
    LaurentBivariate rest;
    const Bitset iv = p_.interval(x, y);
    for (std::size_t z = iv.find_first(); z != Bitset::npos; z = iv.find_next(z)) {
      const int rz = p_.rank(z) - p_.rank(x);
      if (z != y) rest += (invert_both((*this)(x, z)) * v_minus_u_[d - rz]).shifted(rz, rz);
      if (z != x) rest -= (*this)(z, y) * uv_minus_1_[rz];
    }
    std::vector<LaurentBivariate::Term> low, high;
    for (auto& t : rest.terms()) {
      if (2 * t.v < d) {
        low.push_back(t);
      } else if (2 * t.v > d) {
        high.push_back(t);
      } else {
        throw RecursionInconsistent("B-polynomial: middle v-degree term in the relation");
      }
    }
    auto b = LaurentBivariate::from_terms(low);
    if (!b.is_polynomial()) throw RecursionInconsistent("B-polynomial: negative exponent");
    if (!(LaurentBivariate::from_terms(high) == -invert_both(b).shifted(d, d)))
      throw RecursionInconsistent("B-polynomial: relation fails after solving");
    return b;
  }

  const FacePoset& p_;
  std::vector<std::unordered_map<std::size_t, LaurentBivariate>> memo_;
  std::vector<LaurentBivariate> v_minus_u_, uv_minus_1_;
};

/// S and T polynomials of one face.
struct FaceSeries {
  UnivariatePoly s;
  UnivariatePoly t;
};

/// S(C_x, t) and T(C_x, t) from graded counts of face x of rank rho.
///
/// Coefficients up to floor(rho/2) come from the counts; the rest follow from
/// a_i = b_{rho-i}. For even rho both middle coefficients are computed directly and
/// must agree. Counts at higher degrees, when present, are checked against the
/// completed polynomials.
inline FaceSeries face_series(const GradedCounts& g, std::size_t x, int rho) {
  const int half = rho / 2;
  const auto& full = g.full[x];
  const auto& inner = g.interior[x];
  if (static_cast<int>(full.size()) <= half) throw std::invalid_argument("face_series: too few graded counts");
  auto series = [&](const std::vector<Integer>& counts, int i) {
    Integer s = 0;
    for (int j = 0; j <= i && j < static_cast<int>(counts.size()); ++j) {
      Integer term = binomial(rho, i - j) * counts[j];
      if ((i - j) % 2) s -= term;
      else s += term;
    }
    return s;
  };
  std::vector<Integer> a(rho + 1, Integer(0)), b(rho + 1, Integer(0));
  for (int i = 0; i <= half; ++i) {
    a[i] = series(full, i);
    b[i] = series(inner, i);
  }
  if (rho % 2 == 0 && a[half] != b[half]) throw NotPolynomial("Serre relation fails in the middle degree");
  for (int i = half + 1; i <= rho; ++i) {
    a[i] = b[rho - i];
    b[i] = a[rho - i];
  }
  if (!a[0].is_one() || (rho > 0 && !b[0].is_zero())) throw NotPolynomial("unexpected constant term");
  for (int i = half + 1; i < static_cast<int>(full.size()); ++i) {
    Integer want_a = i <= rho ? a[i] : Integer(0);
    Integer want_b = i <= rho ? b[i] : Integer(0);
    if (series(full, i) != want_a || series(inner, i) != want_b)
      throw NotPolynomial("scaled lattice-point series does not terminate at the face rank");
  }
  return {UnivariatePoly(a), UnivariatePoly(b)};
}

/// Everything the E-polynomial needs for one nef partition.
struct ConePair {
  GorensteinCone cone;
  GorensteinCone dual;
  FacePoset poset;
  FacePoset dual_poset;
  GradedCounts counts;
  GradedCounts dual_counts;
  std::vector<FaceSeries> series;       ///< per face of poset
  std::vector<FaceSeries> dual_series;  ///< per face of dual_poset

  [[nodiscard]] std::size_t dim() const noexcept { return cone.dim(); }
  [[nodiscard]] std::size_t codim() const noexcept { return cone.r; }
};

/// Builds both cones, their posets and S/T polynomials. count_degree < 0 counts
/// to floor(dim/2), which is all the palindrome completion needs.
inline ConePair build_cone_pair(const GorensteinCone& cone, const GorensteinCone& dual, int count_degree = -1) {
  ConePair cp{cone, dual, face_poset(cone), face_poset(dual), {}, {}, {}, {}};
  link_dual_posets(cp.poset, cp.cone, cp.dual_poset, cp.dual);
  if (!is_eulerian(cp.poset) || !is_eulerian(cp.dual_poset)) throw std::logic_error("face poset is not Eulerian");
  const int deg = count_degree < 0 ? static_cast<int>(cp.dim()) / 2 : count_degree;
  cp.counts = graded_counts(cp.cone, cp.poset, deg);
  cp.dual_counts = graded_counts(cp.dual, cp.dual_poset, deg);
  for (std::size_t x = 0; x < cp.poset.size(); ++x) cp.series.push_back(face_series(cp.counts, x, cp.poset.rank(x)));
  for (std::size_t y = 0; y < cp.dual_poset.size(); ++y)
    cp.dual_series.push_back(face_series(cp.dual_counts, y, cp.dual_poset.rank(y)));
  return cp;
}

inline ConePair build_cone_pair(const NefPartition& p, int count_degree = -1) {
  return build_cone_pair(build_cone(p), dual_cone(p), count_degree);
}

/// E_st(u,v) = sum over intervals [x,y] of
///   (-1)^rho(x) u^rho(y) (uv)^-r S(C_x, v/u) S(C*_y, uv) B([x,y]; 1/u, v).
inline LaurentBivariate e_polynomial(const ConePair& cp, BPolynomials& b) {
  const auto& p = cp.poset;
  const int r = static_cast<int>(cp.codim());
  const int n = static_cast<int>(cp.dim()) - 2 * r;
  std::vector<LaurentBivariate> s_dual_uv(p.size());
  for (std::size_t y = 0; y < p.size(); ++y)
    s_dual_uv[y] = LaurentBivariate::substitute(cp.dual_series[p.dual[y]].s, 1, 1).shifted(p.rank(y), 0);
  LaurentBivariate e;
  for (std::size_t x = 0; x < p.size(); ++x) {
    LaurentBivariate inner;
    for (std::size_t y = p.up[x].find_first(); y != Bitset::npos; y = p.up[x].find_next(y))
      inner += s_dual_uv[y] * laurent_substitute(b(x, y), Axis::u);
    auto term = LaurentBivariate::substitute(cp.series[x].s, -1, 1) * inner;
    if (p.rank(x) % 2) e -= term;
    else e += term;
  }
  e = e.shifted(-r, -r);
  if (!e.is_polynomial() || (!e.is_zero() && (e.max_u() > n || e.max_v() > n)))
    throw ExponentOutOfRange("E-polynomial exponents outside [0, n]");
  return e;
}

inline LaurentBivariate e_polynomial(const ConePair& cp) {
  BPolynomials b(cp.poset);
  return e_polynomial(cp, b);
}

/// Independent evaluation of
///   E_st = sum over [x,y] of (-1)^rho(y) (uv)^-r (v-u)^rho(x) B([y*,x*]; u, v)
///          (uv-1)^(dim-rho(y)) A_(x,y)(u,v),
/// with A the double sum of (u/v)^deg(m) (uv)^-deg(n) over relative-interior lattice
/// points of C_x and C*_y. Writing s = u/v and w = 1/(uv), the factors become
/// v^rho(x) (1-s)^rho(x) and (uv)^(dim-rho(y)) (1-w)^(dim-rho(y)), and each scaled
/// series has degree at most the face rank, so counts up to that rank determine it
/// exactly. Counts are taken directly to full degree: neither the Serre palindrome
/// nor the B-duality is used. `cap` bounds the lattice points visited.
inline LaurentBivariate cross_check_A(const ConePair& cp, std::size_t cap = 2'000'000) {
  const auto& p = cp.poset;
  const auto& q = cp.dual_poset;
  const int dim = static_cast<int>(cp.dim());
  const int r = static_cast<int>(cp.codim());
  auto counts = graded_counts(cp.cone, p, dim, cap);
  auto dual_counts = graded_counts(cp.dual, q, dim, cap);

  // truncated (1 - t)^k * sum_m c_m t^m up to degree k
  auto scaled = [](const std::vector<Integer>& c, int k) {
    std::vector<Integer> out(k + 1, Integer(0));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= i; ++j) {
        Integer term = binomial(k, i - j) * c[j];
        if ((i - j) % 2) out[i] -= term;
        else out[i] += term;
      }
    return UnivariatePoly(out);
  };
  std::vector<LaurentBivariate> tx(p.size()), ty(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    // v^rho (1 - u/v)^rho sum_m I_m (u/v)^m
    tx[x] = LaurentBivariate::substitute(scaled(counts.interior[x], p.rank(x)), 1, -1).shifted(0, p.rank(x));
  }
  for (std::size_t y = 0; y < p.size(); ++y) {
    const auto ys = p.dual[y];
    const int k = dim - p.rank(y);
    // (uv)^k (1 - 1/uv)^k sum_m I*_m (uv)^-m
    ty[y] = LaurentBivariate::substitute(scaled(dual_counts.interior[ys], k), -1, -1).shifted(k, k);
  }
  BPolynomials bq(q);
  LaurentBivariate e;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = p.up[x].find_first(); y != Bitset::npos; y = p.up[x].find_next(y)) {
      auto term = tx[x] * ty[y] * bq(p.dual[y], p.dual[x]);
      if (p.rank(y) % 2) e -= term;
      else e += term;
    }
  return e.shifted(-r, -r);
}

/// String-theoretic Hodge numbers read off the E-polynomial.
struct HodgeData {
  int n = 0;
  std::vector<std::vector<Integer>> h;  ///< h[p][q]
  Integer chi;
  LaurentBivariate e;

  [[nodiscard]] Integer h11() const { return n >= 1 ? h[1][1] : Integer(0); }
  [[nodiscard]] Integer h21() const { return n >= 2 ? h[2][1] : Integer(0); }
};

inline HodgeData hodge_numbers(const LaurentBivariate& e, int n) {
  if (!e.is_polynomial() || (!e.is_zero() && (e.max_u() > n || e.max_v() > n)))
    throw ExponentOutOfRange("E-polynomial exponents outside [0, n]");
  HodgeData hd;
  hd.n = n;
  hd.e = e;
  hd.h.assign(n + 1, std::vector<Integer>(n + 1, Integer(0)));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      Integer c = e.coefficient(p, q);
      hd.h[p][q] = (p + q) % 2 ? -c : c;
      if (hd.h[p][q].sign() < 0) throw NegativeHodge("negative Hodge number");
    }
  hd.chi = e.evaluate_at_one();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      if (hd.h[p][q] != hd.h[q][p] || hd.h[p][q] != hd.h[n - p][n - q])
        throw std::logic_error("Hodge numbers violate the expected symmetries");
  return hd;
}

/// E_st(V; u, v) == (-u)^n E_st(W; 1/u, v).
inline bool mirror_check(const LaurentBivariate& ev, const LaurentBivariate& ew, int n) {
  auto flipped = laurent_substitute(ew, Axis::u).shifted(n, 0);
  if (n % 2) flipped = -flipped;
  return ev == flipped;
}

inline bool mirror_check(const HodgeData& v, const HodgeData& w) {
  return v.n == w.n && mirror_check(v.e, w.e, v.n);
}

/// Hodge data of the complete intersection attached to a nef partition.
inline HodgeData compute_hodge(const NefPartition& p) {
  auto cp = build_cone_pair(p);
  const int n = static_cast<int>(p.dim()) - static_cast<int>(p.codim());
  return hodge_numbers(e_polynomial(cp), n);
}

}  // namespace cicy
