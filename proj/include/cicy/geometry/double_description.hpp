#pragma once

#include "cicy/exact/matrix.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cicy {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct ExtremeRays {
  std::vector<IntVector> rays;  ///< primitive integer generators
  std::vector<Bitset> tight;    ///< tight[r][i] set iff constraint i vanishes on ray r
};

/// Extreme rays of the pointed cone {y in R^dim : <a_i, y> >= 0 for all i}.
///
/// Motzkin double description with the combinatorial adjacency test. Constraints
/// are inserted in the order given, so callers that know which rows are likely
/// to be facet-defining should put them first. Throws std::invalid_argument if
/// the constraints do not have full rank (the cone is not pointed).
inline ExtremeRays extreme_rays(const std::vector<IntVector>& constraints, std::size_t dim) {
  const std::size_t m = constraints.size();
  if (dim == 0) return {};

  // Greedy basis from the leading rows.
  std::vector<std::size_t> basis;
  std::vector<IntVector> echelon;  // fraction-free reduced copies of chosen rows
  std::vector<std::size_t> echelon_pivot;
  for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
    IntVector r = constraints[i];
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const std::size_t p = echelon_pivot[k];
      if (r[p].is_zero()) continue;
      Integer f = r[p], g = echelon[k][p];
      for (std::size_t j = 0; j < dim; ++j) r[j] = r[j] * g - echelon[k][j] * f;
      r = primitive(std::move(r));
    }
    std::size_t p = 0;
    while (p < dim && r[p].is_zero()) ++p;
    if (p == dim) continue;
    basis.push_back(i);
    echelon.push_back(std::move(r));
    echelon_pivot.push_back(p);
  }
  if (basis.size() < dim) throw std::invalid_argument("extreme_rays: cone is not pointed");

  IntMatrix ab(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) ab(i, j) = constraints[basis[i]][j];

  std::vector<IntVector> rays;
  std::vector<Bitset> zeros;
  for (std::size_t j = 0; j < dim; ++j) {
    IntVector e(dim, Integer(0));
    e[j] = 1;
    auto col = solve(ab, e);
    if (!col) throw std::logic_error("extreme_rays: singular basis");
    rays.push_back(primitive_integer(*col));
    Bitset z(m);
    for (std::size_t i = 0; i < dim; ++i)
      if (i != j) z.set(basis[i]);
    zeros.push_back(std::move(z));
  }

  std::vector<char> in_basis(m, 0);
  for (auto b : basis) in_basis[b] = 1;

  std::vector<Integer> val;
  for (std::size_t c = 0; c < m; ++c) {
    if (in_basis[c]) continue;
    const IntVector& a = constraints[c];
    const std::size_t nr = rays.size();
    val.assign(nr, Integer(0));
    std::vector<std::size_t> plus, minus;
    for (std::size_t r = 0; r < nr; ++r) {
      val[r] = dot(a, rays[r]);
      int s = val[r].sign();
      if (s > 0) plus.push_back(r);
      else if (s < 0) minus.push_back(r);
      else zeros[r].set(c);
    }
    if (minus.empty()) continue;

    std::vector<IntVector> next_rays;
    std::vector<Bitset> next_zeros;
    for (std::size_t r = 0; r < nr; ++r) {
      if (val[r].sign() >= 0) {
        next_rays.push_back(rays[r]);
        next_zeros.push_back(zeros[r]);
      }
    }
    Bitset common(m);
    for (std::size_t p : plus) {
      for (std::size_t n : minus) {
        common = zeros[p] & zeros[n];
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < nr && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(zeros[r])) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector ray(dim);
        const Integer& sp = val[p];
        Integer sn = -val[n];
        for (std::size_t j = 0; j < dim; ++j) {
          ray[j] = sp * rays[n][j];
          ray[j].add_product(sn, rays[p][j]);
        }
        next_rays.push_back(primitive(std::move(ray)));
        Bitset z = common;
        z.set(c);
        next_zeros.push_back(std::move(z));
      }
    }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }
  return {std::move(rays), std::move(zeros)};
}

}  // namespace cicy
