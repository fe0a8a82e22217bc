#pragma once

#include "cicy/geometry/lattice_points.hpp"
#include "cicy/geometry/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace cicy {

struct SubpolytopeSearchStats {
  std::size_t nodes = 0;       ///< distinct point subsets visited
  std::size_t candidates = 0;  ///< cutting normals considered
  std::size_t reflexive = 0;   ///< reflexive subsets reached before the maximality filter
};

namespace detail {

/// Lattice points n != 0 with <n, x> >= -1 on some set A that a reflexive
/// subpolytope containing `keep` must contain. While Conv(A) does not have 0 in
/// its interior, some facet (or affine equation) separates 0 from A; a polytope
/// with 0 in its interior then contains a point of `pool` strictly on the far
/// side, so the search branches over those points.
inline std::set<IntVector> admissible_normals(const std::vector<IntVector>& keep, const std::vector<IntVector>& pool,
                                              Lattice side) {
  std::set<IntVector> out;
  std::set<std::set<IntVector>> seen;
  std::vector<std::set<IntVector>> stack{std::set<IntVector>(keep.begin(), keep.end())};
  while (!stack.empty()) {
    auto a = std::move(stack.back());
    stack.pop_back();
    if (a.empty()) throw std::runtime_error("reflexive_subpolytopes: no points are certain to be kept");
    const std::vector<IntVector> av(a.begin(), a.end());
    Polytope core = Polytope::hull(av, side);

    // Linear forms g with <g, x> >= 0 on A; one exists per facet not strictly
    // separating 0, or per affine equation when A is not full-dimensional.
    std::vector<IntVector> separators;
    for (const auto& e : core.equations())
      separators.push_back(e.offset.sign() > 0 ? scaled(e.normal, Integer(-1)) : e.normal);
    if (separators.empty())
      for (const auto& f : core.facets())
        if (f.offset.sign() <= 0) separators.push_back(f.normal);
    if (separators.empty()) {
      for (auto& n : lattice_points(dual(core)))
        if (!is_zero_vector(n)) out.insert(std::move(n));
      continue;
    }
    std::vector<IntVector> far;
    for (const auto& g : separators) {
      std::vector<IntVector> cand;
      for (const auto& q : pool)
        if (dot(g, q).sign() < 0) cand.push_back(q);
      if (far.empty() || cand.size() < far.size()) far = std::move(cand);
      if (far.empty()) break;
    }
    // A far point whose hull with A swallows another far point gives a smaller region.
    for (std::size_t i = 0; i < far.size(); ++i) {
      auto with = av;
      with.push_back(far[i]);
      Polytope h = Polytope::hull(with, side);
      bool dominated = false;
      for (std::size_t j = 0; j < far.size() && !dominated; ++j)
        dominated = j != i && h.contains(far[j]);
      if (dominated) continue;
      auto next = a;
      next.insert(far[i]);
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace detail

/// Maximal reflexive lattice polytopes Q inside p with at most max_drop lattice
/// points of p outside Q, sorted by decreasing number of lattice points.
///
/// Every such Q is cut out of p's lattice points by its facet normals n, each of
/// which removes at most max_drop points of p. A point x of p that is the
/// midpoint of max_drop or more pairs of p's points is never removed (a normal
/// cutting x cuts one point of each pair too), and neither is the origin, which
/// bounds the candidate normals. The search starts from all points of p. While the hull is not
/// reflexive it picks a facet at lattice distance >= 2 and branches over the
/// candidate normals removing one of its vertices, which any reflexive Q below
/// must do (otherwise that facet would be a facet of Q).
inline std::vector<Polytope> reflexive_subpolytopes(const Polytope& p, std::size_t max_drop,
                                                    SubpolytopeSearchStats* stats = nullptr) {
  if (!p.is_full_dimensional() || !p.is_lattice_polytope())
    throw std::invalid_argument("reflexive_subpolytopes: need a full-dimensional lattice polytope");
  for (const auto& f : p.facets())
    if (f.offset.sign() <= 0) throw OriginNotInterior("reflexive_subpolytopes: origin not interior");
  SubpolytopeSearchStats local;
  SubpolytopeSearchStats& st = stats ? *stats : local;
  if (is_reflexive(p)) return {p};
  if (max_drop == 0) return {};

  const auto pts = lattice_points(p);
  const std::size_t np = pts.size();
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < np; ++i) index.emplace(pts[i], i);

  // The origin is interior to every candidate, so it is always kept.
  std::vector<IntVector> safe, unsafe;
  for (std::size_t i = 0; i < np; ++i) {
    if (is_zero_vector(pts[i])) {
      safe.push_back(pts[i]);
      continue;
    }
    std::size_t pairs = 0;
    IntVector twice = scaled(pts[i], Integer(2));
    for (std::size_t j = 0; j < i && pairs < max_drop; ++j)
      if (index.count(twice - pts[j])) ++pairs;
    (pairs >= max_drop ? safe : unsafe).push_back(pts[i]);
  }

  // Distinct point sets removed by admissible normals.
  std::set<Bitset> cut_set;
  for (const auto& nrm : detail::admissible_normals(safe, unsafe, p.side())) {
    Bitset cut(np);
    for (std::size_t i = 0; i < np; ++i)
      if (dot(nrm, pts[i]) < Integer(-1)) cut.set(i);
    std::size_t c = cut.count();
    if (c >= 1 && c <= max_drop) cut_set.insert(cut);
  }
  const std::vector<Bitset> cuts(cut_set.begin(), cut_set.end());
  st.candidates = cuts.size();

  auto hull_of = [&](const Bitset& k) {
    std::vector<IntVector> sub;
    for (std::size_t i = k.find_first(); i != Bitset::npos; i = k.find_next(i)) sub.push_back(pts[i]);
    return Polytope::hull(sub, p.side());
  };

  std::set<Bitset> visited;
  std::vector<Bitset> found;
  std::vector<Bitset> stack;
  Bitset all(np);
  all.set();
  stack.push_back(all);
  visited.insert(all);
  while (!stack.empty()) {
    Bitset k = std::move(stack.back());
    stack.pop_back();
    ++st.nodes;
    Polytope q = hull_of(k);
    if (!q.is_full_dimensional()) continue;
    bool interior = true;
    for (const auto& f : q.facets()) interior = interior && f.offset.sign() > 0;
    if (!interior) continue;
    if (is_reflexive(q)) {
      found.push_back(k);
      continue;
    }
    // Bad facet with the fewest branches.
    std::vector<Bitset> best;
    bool have_best = false;
    const auto& verts = q.vertices();
    for (std::size_t f = 0; f < q.facets().size(); ++f) {
      if (q.facets()[f].offset.is_one()) continue;
      Bitset fv(np);
      const auto& inc = q.incidence()[f];
      for (std::size_t v = inc.find_first(); v != Bitset::npos; v = inc.find_next(v))
        fv.set(index.at(verts[v].num));
      std::vector<Bitset> branches;
      for (const auto& c : cuts) {
        if (!c.intersects(fv)) continue;
        Bitset next = k - c;
        if (np - next.count() > max_drop) continue;
        branches.push_back(std::move(next));
      }
      if (!have_best || branches.size() < best.size()) {
        best = std::move(branches);
        have_best = true;
      }
      if (best.empty()) break;
    }
    for (auto& b : best)
      if (visited.insert(b).second) stack.push_back(std::move(b));
  }
  st.reflexive = found.size();

  // Keep inclusion-maximal point sets.
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<Bitset> maximal;
  for (const auto& a : found) {
    bool dominated = false;
    for (const auto& b : found)
      if (a != b && a.is_subset_of(b)) dominated = true;
    if (!dominated) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() > b.count();
    return a > b;
  });
  std::vector<Polytope> out;
  for (const auto& k : maximal) out.push_back(hull_of(k));
  return out;
}

}  // namespace cicy
