#pragma once

#include "cicy/exact/matrix.hpp"
#include "cicy/geometry/lattice_points.hpp"
#include "cicy/geometry/polytope.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

class NotReflexive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PartInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partition E_1, ..., E_r of the vertices of a reflexive polytope's dual, with the
/// derived polytopes nabla_i = Conv(E_i and 0), nabla = sum of nabla_i, and
/// delta_i = {m : <m, e> >= -1 on E_i, >= 0 on the other vertices}.
///
/// `delta` need not live on the M side: the dual partition swaps the roles.
struct NefPartition {
  Polytope delta;
  Polytope delta_dual;
  std::vector<std::vector<std::size_t>> parts;  ///< ascending indices into delta_dual.vertices()
  std::vector<Polytope> nabla_parts;
  std::vector<Polytope> delta_parts;
  Polytope nabla;

  [[nodiscard]] std::size_t codim() const noexcept { return parts.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return delta.ambient_dim(); }

  [[nodiscard]] std::vector<std::vector<IntVector>> part_vertices() const {
    std::vector<std::vector<IntVector>> out;
    for (const auto& part : parts) {
      std::vector<IntVector> vs;
      for (auto i : part) vs.push_back(delta_dual.vertices()[i].num);
      out.push_back(std::move(vs));
    }
    return out;
  }

  /// Part index of each vertex of delta_dual.
  [[nodiscard]] std::vector<std::size_t> coloring() const {
    std::vector<std::size_t> c(delta_dual.vertices().size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (auto v : parts[i]) c[v] = i;
    return c;
  }
};

namespace detail {

inline Polytope origin_point(std::size_t dim, Lattice side) {
  return Polytope::hull({IntVector(dim, Integer(0))}, side);
}

inline std::vector<std::vector<std::size_t>> parts_from_coloring(const std::vector<std::size_t>& color,
                                                                 std::size_t r) {
  std::vector<std::vector<std::size_t>> parts(r);
  for (std::size_t v = 0; v < color.size(); ++v) parts[color[v]].push_back(v);
  return parts;
}

/// Exact necessary condition for a coloring of the vertices of delta_dual to be a
/// nef partition: on the cone over each facet F, the function equal to 1 on E_i and
/// 0 on the other vertices must be given by an integral linear form -m_{F,i}, and
/// these forms must satisfy <m_{F,i}, e> >= -[e in E_i] at every vertex e.
class NefPrefilter {
 public:
  explicit NefPrefilter(const Polytope& delta_dual) : verts_(delta_dual.integral_vertices()) {
    const std::size_t d = delta_dual.ambient_dim();
    for (std::size_t f = 0; f < delta_dual.facets().size(); ++f) {
      const auto& inc = delta_dual.incidence()[f];
      Facet fc;
      std::vector<IntVector> rows;
      for (std::size_t v = inc.find_first(); v != Bitset::npos; v = inc.find_next(v)) {
        fc.vertices.push_back(v);
        if (fc.basis.size() == d) continue;
        rows.push_back(verts_[v]);
        if (rank(rows, d) == rows.size()) fc.basis.push_back(v);
        else rows.pop_back();
      }
      if (fc.basis.size() != d) throw std::logic_error("nef prefilter: facet does not span");
      // m * den = adj * values with values on the basis vertices
      IntMatrix b = IntMatrix::from_rows(rows, d);
      fc.den = determinant(b);
      fc.adj = IntMatrix(d, d);
      for (std::size_t j = 0; j < d; ++j) {
        IntVector e(d, Integer(0));
        e[j] = fc.den;
        auto col = solve(b, e);
        for (std::size_t i = 0; i < d; ++i) {
          if (!(*col)[i].is_integer()) throw std::logic_error("nef prefilter: adjugate not integral");
          fc.adj(i, j) = (*col)[i].num();
        }
      }
      fc.last_basis = *std::max_element(fc.basis.begin(), fc.basis.end());
      facets_.push_back(std::move(fc));
    }
  }

  /// Checks the colors of vertices 0..t, assuming vertices 0..t-1 already passed:
  /// facets whose basis completes at t are checked against all colored vertices,
  /// earlier facets only against vertex t.
  [[nodiscard]] bool consistent(const std::vector<std::size_t>& color, std::size_t t, std::size_t r) const {
    const std::size_t d = verts_[0].size();
    IntVector m(d);
    for (const auto& fc : facets_) {
      if (fc.last_basis > t) continue;
      const std::size_t first = fc.last_basis == t ? 0 : t;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
          m[a] = 0;
          for (std::size_t j = 0; j < d; ++j)
            if (color[fc.basis[j]] == i) m[a] -= fc.adj(a, j);
          if (!(m[a] % fc.den).is_zero()) return false;
        }
        for (std::size_t v = first; v <= t; ++v) {
          Integer diff = dot(m, verts_[v]);
          if (color[v] == i) diff += fc.den;
          // sign of <m/den, e> + [e in E_i]
          int c = diff.sign() * fc.den.sign();
          if (c < 0) return false;
          if (c != 0 && contains(fc.vertices, v)) return false;
        }
      }
    }
    return true;
  }

 private:
  struct Facet {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> basis;
    std::size_t last_basis = 0;
    Integer den;
    IntMatrix adj;
  };
  static bool contains(const std::vector<std::size_t>& v, std::size_t x) {
    return std::binary_search(v.begin(), v.end(), x);
  }
  std::vector<IntVector> verts_;
  std::vector<Facet> facets_;
};

}  // namespace detail

/// delta_i = {m : <m, e> >= -1 for e in E_i, >= 0 for the other vertices e}.
inline std::vector<Polytope> delta_parts(const Polytope& delta_dual, const std::vector<std::vector<std::size_t>>& parts) {
  const auto verts = delta_dual.integral_vertices();
  const std::size_t d = delta_dual.ambient_dim();
  std::vector<Polytope> out;
  for (const auto& part : parts) {
    std::vector<HalfSpace> ineq;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      bool mine = std::binary_search(part.begin(), part.end(), v);
      ineq.push_back({verts[v], Integer(mine ? 1 : 0)});
    }
    out.push_back(Polytope::from_inequalities(d, ineq, {}, opposite(delta_dual.side())));
  }
  return out;
}

inline std::vector<Polytope> delta_parts(const NefPartition& p) { return delta_parts(p.delta_dual, p.parts); }

/// Nabla-side criterion: sum of nabla_i reflexive and nabla_i meet pairwise only in 0.
/// Returns the nabla_i and their sum when the test passes.
inline bool nabla_side_test(const Polytope& delta_dual, const std::vector<std::vector<std::size_t>>& parts,
                            std::vector<Polytope>* nabla_parts = nullptr, Polytope* nabla = nullptr) {
  const std::size_t d = delta_dual.ambient_dim();
  std::vector<Polytope> np;
  for (const auto& part : parts) {
    if (part.empty()) return false;
    std::vector<IntVector> pts{IntVector(d, Integer(0))};
    for (auto v : part) pts.push_back(delta_dual.vertices()[v].num);
    np.push_back(Polytope::hull(pts, delta_dual.side()));
  }
  const Polytope origin = detail::origin_point(d, delta_dual.side());
  for (std::size_t i = 0; i < np.size(); ++i)
    for (std::size_t j = i + 1; j < np.size(); ++j)
      if (!(intersect(np[i], np[j]) == origin)) return false;
  Polytope sum = minkowski_sum(np);
  if (!is_reflexive(sum)) return false;
  if (nabla_parts) *nabla_parts = std::move(np);
  if (nabla) *nabla = std::move(sum);
  return true;
}

/// Builds a fully derived partition, checking both sides. Throws std::invalid_argument
/// when the nabla-side test fails and PartInconsistent when the delta side disagrees.
inline NefPartition make_nef_partition(const Polytope& delta_dual, std::vector<std::vector<std::size_t>> parts) {
  if (!is_reflexive(delta_dual)) throw NotReflexive("nef partition: dual polytope is not reflexive");
  const std::size_t nv = delta_dual.vertices().size();
  std::vector<int> seen(nv, 0);
  for (auto& part : parts) {
    if (part.empty()) throw std::invalid_argument("nef partition: empty part");
    std::sort(part.begin(), part.end());
    for (auto v : part) {
      if (v >= nv || seen[v]++) throw std::invalid_argument("nef partition: parts must partition the vertices");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw std::invalid_argument("nef partition: vertex not covered");

  NefPartition p;
  p.delta_dual = delta_dual;
  p.delta = dual(delta_dual);
  p.parts = std::move(parts);
  if (!nabla_side_test(delta_dual, p.parts, &p.nabla_parts, &p.nabla))
    throw std::invalid_argument("not a nef partition");
  p.delta_parts = delta_parts(delta_dual, p.parts);

  const std::size_t d = delta_dual.ambient_dim();
  const Polytope origin = detail::origin_point(d, p.delta.side());
  for (const auto& q : p.delta_parts)
    if (!q.is_lattice_polytope()) throw PartInconsistent("delta part has a non-integral vertex");
  if (!(minkowski_sum(p.delta_parts) == p.delta)) throw PartInconsistent("delta parts do not sum to delta");
  for (std::size_t i = 0; i < p.delta_parts.size(); ++i)
    for (std::size_t j = i + 1; j < p.delta_parts.size(); ++j)
      if (!(intersect(p.delta_parts[i], p.delta_parts[j]) == origin))
        throw PartInconsistent("delta parts meet outside the origin");
  return p;
}

/// All nef partitions of the vertices of delta_dual into r nonempty unordered parts,
/// parts ordered by their smallest vertex, in lexicographic order of colorings.
/// With `ordered`, every permutation of the parts is listed as well.
inline std::vector<NefPartition> enumerate_nef_partitions(const Polytope& delta_dual, std::size_t r,
                                                          bool ordered = false) {
  if (r == 0) throw std::invalid_argument("codimension must be positive");
  if (!is_reflexive(delta_dual)) throw NotReflexive("enumerate_nef_partitions: polytope is not reflexive");
  const std::size_t nv = delta_dual.vertices().size();
  std::vector<NefPartition> out;
  if (r > nv) return out;

  detail::NefPrefilter filter(delta_dual);
  std::vector<std::size_t> color(nv, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t used) {
    if (t == nv) {
      if (used != r) return;
      auto parts = detail::parts_from_coloring(color, r);
      if (!nabla_side_test(delta_dual, parts)) return;
      out.push_back(make_nef_partition(delta_dual, std::move(parts)));
      return;
    }
    const std::size_t limit = std::min(used + 1, r);
    for (std::size_t c = 0; c < limit; ++c) {
      std::size_t now_used = std::max(used, c + 1);
      if (r - now_used > nv - t - 1) continue;
      color[t] = c;
      if (!filter.consistent(color, t, r)) continue;
      rec(t + 1, now_used);
    }
  };
  rec(0, 0);

  if (ordered && r > 1) {
    std::vector<NefPartition> all;
    for (const auto& p : out) {
      std::vector<std::size_t> perm(r);
      for (std::size_t i = 0; i < r; ++i) perm[i] = i;
      do {
        NefPartition q = p;
        for (std::size_t i = 0; i < r; ++i) {
          q.parts[i] = p.parts[perm[i]];
          q.nabla_parts[i] = p.nabla_parts[perm[i]];
          q.delta_parts[i] = p.delta_parts[perm[i]];
        }
        all.push_back(std::move(q));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return all;
  }
  return out;
}

/// The dual partition: nabla takes the role of delta, and the parts are the
/// vertices of Conv(delta_1, ..., delta_r) lying in each delta_i.
inline NefPartition dual_nef_partition(const NefPartition& p) {
  const Polytope nabla_dual = dual(p.nabla);
  std::vector<std::vector<std::size_t>> parts(p.codim());
  const auto& verts = nabla_dual.vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    std::size_t owner = p.codim();
    for (std::size_t i = 0; i < p.codim(); ++i) {
      if (p.delta_parts[i].contains(verts[v])) {
        if (owner != p.codim()) throw PartInconsistent("dual vertex lies in two delta parts");
        owner = i;
      }
    }
    if (owner == p.codim()) throw PartInconsistent("dual vertex lies in no delta part");
    parts[owner].push_back(v);
  }
  NefPartition q = make_nef_partition(nabla_dual, std::move(parts));
  // Parts keep the order of the original so that the involution returns the same labels.
  return q;
}

/// <m, n> >= -delta_ij for all vertices m of delta_i and n of nabla_j.
inline bool verify_pairing_box(const NefPartition& p) {
  for (std::size_t i = 0; i < p.codim(); ++i)
    for (std::size_t j = 0; j < p.codim(); ++j) {
      const Integer bound = i == j ? Integer(-1) : Integer(0);
      for (const auto& m : p.delta_parts[i].vertices())
        for (const auto& n : p.nabla_parts[j].vertices()) {
          // vertices may be rational in a corrupted partition; compare scaled
          Integer lhs = dot(m.num, n.num);
          if (lhs < bound * m.den * n.den) return false;
        }
    }
  return true;
}

}  // namespace cicy
