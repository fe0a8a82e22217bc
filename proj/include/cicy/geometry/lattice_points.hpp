#pragma once

#include "cicy/geometry/polytope.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace cicy {

/// Calls visit(point) for every lattice point of p, in no particular order.
///
/// Depth-first over the free coordinates with interval propagation from the
/// facet inequalities; the remaining coordinates follow from the equations.
inline void for_each_lattice_point(const Polytope& p, const std::function<void(const IntVector&)>& visit) {
  if (p.is_empty()) return;
  const std::size_t n = p.ambient_dim();
  const auto& J = p.free_coordinates();
  const std::size_t k = J.size();

  if (k == 0) {
    const auto& v = p.vertices().front();
    if (v.is_integral()) visit(v.num);
    return;
  }

  // Dependent coordinates as L * x_c = sum_j coef[c][j] * x_J[j] + coef[c][k].
  std::vector<std::size_t> dependent;
  {
    std::vector<char> is_free(n, 0);
    for (auto j : J) is_free[j] = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_free[c]) dependent.push_back(c);
  }
  const std::size_t nd = dependent.size();
  std::vector<IntVector> dep_coef(nd, IntVector(k + 1, Integer(0)));
  Integer dep_den = 1;
  if (nd > 0) {
    std::vector<RatVector> sys;
    for (const auto& e : p.equations()) {
      RatVector row;
      for (auto c : dependent) row.emplace_back(e.normal[c]);
      for (auto j : J) row.emplace_back(e.normal[j]);
      row.emplace_back(e.offset);
      sys.push_back(std::move(row));
    }
    auto pivots = rref(sys);
    if (pivots.size() != nd) throw std::logic_error("lattice points: affine hull is not a graph over free coordinates");
    for (std::size_t r = 0; r < nd; ++r)
      for (std::size_t j = nd; j <= nd + k; ++j) dep_den = lcm(dep_den, sys[r][j].den());
    for (std::size_t r = 0; r < nd; ++r) {
      if (pivots[r] != r) throw std::logic_error("lattice points: unexpected pivot layout");
      for (std::size_t j = 0; j <= k; ++j) {
        Rational q = -sys[r][nd + j] * Rational(dep_den);
        dep_coef[r][j] = q.num();
      }
    }
  }

  // Facet coefficients restricted to free coordinates.
  const auto& facets = p.facets();
  const std::size_t nf = facets.size();
  std::vector<IntVector> a(nf, IntVector(k));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t j = 0; j < k; ++j) a[f][j] = facets[f].normal[J[j]];

  // Bounding box of the free coordinates.
  std::vector<Integer> lo(k), hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    Rational mn = p.vertices()[0].coord(J[j]), mx = mn;
    for (const auto& v : p.vertices()) {
      Rational c = v.coord(J[j]);
      if (c < mn) mn = c;
      if (mx < c) mx = c;
    }
    lo[j] = mn.ceil();
    hi[j] = mx.floor();
    if (hi[j] < lo[j]) return;
  }
  // rest_max[f][t] = max over the box of sum_{j >= t} a[f][j] x_j
  std::vector<std::vector<Integer>> rest_max(nf, std::vector<Integer>(k + 1, Integer(0)));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t t = k; t-- > 0;) {
      Integer m1 = a[f][t] * lo[t], m2 = a[f][t] * hi[t];
      rest_max[f][t] = rest_max[f][t + 1] + (m1 < m2 ? m2 : m1);
    }

  std::vector<Integer> partial(nf);  // offset + sum of fixed terms
  for (std::size_t f = 0; f < nf; ++f) partial[f] = facets[f].offset;
  IntVector x(k);
  IntVector point(n, Integer(0));

  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == k) {
      for (std::size_t r = 0; r < nd; ++r) {
        Integer s = dep_coef[r][k];
        for (std::size_t j = 0; j < k; ++j) s.add_product(dep_coef[r][j], x[j]);
        if (!dep_den.is_one()) {
          if (!(s % dep_den).is_zero()) return;
          s /= dep_den;
        }
        point[dependent[r]] = s;
      }
      for (std::size_t j = 0; j < k; ++j) point[J[j]] = x[j];
      visit(point);
      return;
    }
    Integer l = lo[t], h = hi[t];
    for (std::size_t f = 0; f < nf; ++f) {
      const Integer& c = a[f][t];
      if (c.is_zero()) continue;
      // c * x_t >= -(partial + rest_max over later coordinates)
      Integer rhs = -(partial[f] + rest_max[f][t + 1]);
      if (c.sign() > 0) {
        Integer b = ceil_div(rhs, c);
        if (l < b) l = b;
      } else {
        Integer b = floor_div(rhs, c);
        if (b < h) h = b;
      }
      if (h < l) return;
    }
    for (Integer v = l; v <= h; v += 1) {
      x[t] = v;
      for (std::size_t f = 0; f < nf; ++f) partial[f].add_product(a[f][t], v);
      rec(t + 1);
      for (std::size_t f = 0; f < nf; ++f) partial[f].add_product(a[f][t], -v);
    }
  };
  rec(0);
}

/// All lattice points of p in lexicographic order.
inline std::vector<IntVector> lattice_points(const Polytope& p) {
  std::vector<IntVector> out;
  for_each_lattice_point(p, [&](const IntVector& x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_lattice_points(const Polytope& p) {
  std::size_t n = 0;
  for_each_lattice_point(p, [&](const IntVector&) { ++n; });
  return n;
}

/// Lattice points in the relative interior of p.
inline std::vector<IntVector> interior_lattice_points(const Polytope& p) {
  std::vector<IntVector> out;
  for_each_lattice_point(p, [&](const IntVector& x) {
    for (const auto& f : p.facets())
      if (f.evaluate(x).sign() <= 0) return;
    out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cicy
