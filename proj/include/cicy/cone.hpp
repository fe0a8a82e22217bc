#pragma once

#include "cicy/geometry/double_description.hpp"
#include "cicy/geometry/lattice_points.hpp"
#include "cicy/geometry/polytope.hpp"
#include "cicy/nef_partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace cicy {

class DegenerateCone : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DualityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cone over the Cayley polytope K = Conv(e_1 x P_1, ..., e_r x P_r) in Z^r x Z^d.
///
/// Coordinates are split as (a_1, ..., a_r; m); the grading point (1, ..., 1; 0)
/// pairs to 1 with every generator.
struct GorensteinCone {
  std::size_t r = 0;
  std::size_t d = 0;
  Lattice side = Lattice::M;
  std::vector<IntVector> generators;     ///< all lattice points of degree 1, sorted
  std::vector<IntVector> rays;           ///< extreme rays (vertices of K), sorted
  std::vector<IntVector> facet_normals;  ///< primitive inward normals, sorted
  std::vector<Bitset> ray_facets;        ///< ray_facets[i][f]: ray i lies on facet f
  IntVector grading;                     ///< (1, ..., 1; 0, ..., 0) on the opposite side
  Polytope slice;                        ///< K, the degree-1 cross-section

  [[nodiscard]] std::size_t dim() const noexcept { return r + d; }
  [[nodiscard]] Integer degree(const IntVector& x) const {
    Integer s = 0;
    for (std::size_t i = 0; i < r; ++i) s += x[i];
    return s;
  }
};

inline IntVector cayley_point(std::size_t i, std::size_t r, const IntVector& p) {
  IntVector x(r, Integer(0));
  x[i] = 1;
  x.insert(x.end(), p.begin(), p.end());
  return x;
}

/// Gorenstein cone over the given parts (lattice polytopes containing 0).
inline GorensteinCone cone_from_parts(const std::vector<Polytope>& parts) {
  if (parts.empty()) throw std::invalid_argument("cone needs at least one part");
  GorensteinCone c;
  c.r = parts.size();
  c.d = parts[0].ambient_dim();
  c.side = parts[0].side();
  for (std::size_t i = 0; i < c.r; ++i) {
    for (const auto& p : lattice_points(parts[i])) c.generators.push_back(cayley_point(i, c.r, p));
    for (const auto& v : parts[i].integral_vertices()) c.rays.push_back(cayley_point(i, c.r, v));
  }
  std::sort(c.generators.begin(), c.generators.end());
  std::sort(c.rays.begin(), c.rays.end());
  const std::size_t n = c.dim();
  if (rank(c.generators, n) < n) throw DegenerateCone("cone is not full-dimensional");

  auto er = extreme_rays(c.rays, n);
  std::vector<std::size_t> order(er.rays.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return er.rays[a] < er.rays[b]; });
  for (auto f : order) c.facet_normals.push_back(er.rays[f]);
  c.ray_facets.assign(c.rays.size(), Bitset(c.facet_normals.size()));
  for (std::size_t f = 0; f < order.size(); ++f)
    for (std::size_t i = 0; i < c.rays.size(); ++i)
      if (er.tight[order[f]].test(i)) c.ray_facets[i].set(f);

  c.grading.assign(n, Integer(0));
  for (std::size_t i = 0; i < c.r; ++i) c.grading[i] = 1;
  for (const auto& g : c.generators)
    if (!dot(g, c.grading).is_one()) throw DegenerateCone("generator not at degree 1");
  c.slice = Polytope::hull(c.generators, c.side);
  return c;
}

/// C_Delta, built from the delta parts of the partition.
inline GorensteinCone build_cone(const NefPartition& p) { return cone_from_parts(p.delta_parts); }

/// C_nabla, built from the nabla parts (the delta parts of the dual partition).
inline GorensteinCone dual_cone(const NefPartition& p) { return cone_from_parts(p.nabla_parts); }

/// Checks that the two cones are dual: generators pair nonnegatively, the grading
/// points lie strictly inside the opposite cones, and facet normals of each cone
/// are exactly the rays of the other.
inline void verify_duality(const GorensteinCone& a, const GorensteinCone& b) {
  if (a.dim() != b.dim() || a.r != b.r) throw DualityMismatch("cone dimensions differ");
  for (const auto& x : a.generators)
    for (const auto& y : b.generators)
      if (dot(x, y).sign() < 0) throw DualityMismatch("generators pair negatively");
  for (const auto& n : a.facet_normals)
    if (dot(n, b.grading).sign() <= 0) throw DualityMismatch("grading point not interior");
  for (const auto& n : b.facet_normals)
    if (dot(n, a.grading).sign() <= 0) throw DualityMismatch("grading point not interior");
  if (a.facet_normals != b.rays) throw DualityMismatch("facets of the cone are not the rays of its dual");
  if (b.facet_normals != a.rays) throw DualityMismatch("rays of the cone are not the facets of its dual");
}

/// Faces of a cone from the ray/facet incidence, with ranks, order and dual faces.
///
/// Faces are sorted by rank, then by ray set; face 0 is {0} and the last face is
/// the whole cone.
struct FacePoset {
  struct Face {
    Bitset rays;
    Bitset facets;
    int rank = 0;
  };
  std::vector<Face> faces;
  std::vector<Bitset> up;    ///< up[x][y]: x <= y
  std::vector<Bitset> down;  ///< down[y][x]: x <= y
  std::vector<std::size_t> dual;  ///< index of x* in the dual poset (filled by link_dual_posets)
  std::map<Bitset, std::size_t> by_facets;

  [[nodiscard]] std::size_t size() const noexcept { return faces.size(); }
  [[nodiscard]] int rank(std::size_t x) const { return faces[x].rank; }
  [[nodiscard]] std::size_t bottom() const noexcept { return 0; }
  [[nodiscard]] std::size_t top() const noexcept { return faces.size() - 1; }
  [[nodiscard]] bool leq(std::size_t x, std::size_t y) const { return up[x].test(y); }
  [[nodiscard]] Bitset interval(std::size_t x, std::size_t y) const { return up[x] & down[y]; }
};

inline FacePoset face_poset(const GorensteinCone& c) {
  const std::size_t nr = c.rays.size(), nf = c.facet_normals.size();
  std::vector<Bitset> facet_rays(nf, Bitset(nr));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t f = 0; f < nf; ++f)
      if (c.ray_facets[i].test(f)) facet_rays[f].set(i);

  auto facets_of = [&](const Bitset& rays) {
    Bitset fs(nf);
    fs.set();
    for (std::size_t i = rays.find_first(); i != Bitset::npos; i = rays.find_next(i)) fs &= c.ray_facets[i];
    return fs;
  };

  // Closed ray sets: the whole cone and all intersections with facets.
  std::set<Bitset> closed;
  std::vector<Bitset> queue;
  Bitset all(nr);
  all.set();
  closed.insert(all);
  queue.push_back(all);
  while (!queue.empty()) {
    Bitset rs = std::move(queue.back());
    queue.pop_back();
    for (std::size_t f = 0; f < nf; ++f) {
      Bitset next = rs & facet_rays[f];
      if (next == rs) continue;
      // closure: rays on every facet containing `next`
      Bitset fs = facets_of(next);
      Bitset cl(nr);
      cl.set();
      for (std::size_t g = fs.find_first(); g != Bitset::npos; g = fs.find_next(g)) cl &= facet_rays[g];
      if (closed.insert(cl).second) queue.push_back(cl);
    }
  }

  FacePoset p;
  for (const auto& rs : closed) {
    FacePoset::Face face;
    face.rays = rs;
    face.facets = facets_of(rs);
    std::vector<IntVector> gens;
    for (std::size_t i = rs.find_first(); i != Bitset::npos; i = rs.find_next(i)) gens.push_back(c.rays[i]);
    face.rank = static_cast<int>(rank(gens, c.dim()));
    p.faces.push_back(std::move(face));
  }
  std::sort(p.faces.begin(), p.faces.end(), [](const auto& a, const auto& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.rays < b.rays;
  });
  const std::size_t n = p.faces.size();
  if (p.faces.front().rank != 0 || p.faces.back().rank != static_cast<int>(c.dim()))
    throw std::logic_error("face poset: missing bottom or top");
  p.up.assign(n, Bitset(n));
  p.down.assign(n, Bitset(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (p.faces[x].rays.is_subset_of(p.faces[y].rays)) {
        p.up[x].set(y);
        p.down[y].set(x);
      }
    p.by_facets.emplace(p.faces[x].facets, x);
  }
  return p;
}

/// Fills the dual-face maps: x* is the face of the dual cone whose rays are the
/// facet normals of the faces' cone that vanish on x.
inline void link_dual_posets(FacePoset& p, const GorensteinCone& c, FacePoset& q, const GorensteinCone& d) {
  verify_duality(c, d);
  // facet f of c is ray f of d (both sorted identically after verify_duality)
  std::map<Bitset, std::size_t> q_by_rays;
  for (std::size_t y = 0; y < q.size(); ++y) q_by_rays.emplace(q.faces[y].rays, y);
  std::map<Bitset, std::size_t> p_by_rays;
  for (std::size_t x = 0; x < p.size(); ++x) p_by_rays.emplace(p.faces[x].rays, x);
  p.dual.assign(p.size(), 0);
  q.dual.assign(q.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto it = q_by_rays.find(p.faces[x].facets);
    if (it == q_by_rays.end()) throw DualityMismatch("dual face missing");
    p.dual[x] = it->second;
  }
  for (std::size_t y = 0; y < q.size(); ++y) {
    auto it = p_by_rays.find(q.faces[y].facets);
    if (it == p_by_rays.end()) throw DualityMismatch("dual face missing");
    q.dual[y] = it->second;
  }
  const int n = static_cast<int>(c.dim());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (q.dual[p.dual[x]] != x) throw DualityMismatch("dual face map is not an involution");
    if (p.rank(x) + q.rank(p.dual[x]) != n) throw DualityMismatch("dual face ranks do not add up");
  }
}

/// Alternating rank sum over every interval [x, y] with x < y; returns false on the
/// first interval where it does not vanish.
inline bool is_eulerian(const FacePoset& p) {
  const std::size_t n = p.size();
  Bitset even(n);
  for (std::size_t x = 0; x < n; ++x)
    if (p.rank(x) % 2 == 0) even.set(x);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = p.up[x].find_next(x); y != Bitset::npos; y = p.up[x].find_next(y)) {
      Bitset iv = p.interval(x, y);
      std::size_t e = (iv & even).count();
      if (2 * e != iv.count()) return false;
    }
  return true;
}

enum class Region { full, interior };

/// Lattice-point counts of every face at degrees 0..max_degree.
struct GradedCounts {
  std::vector<std::vector<Integer>> full;      ///< [face][m]
  std::vector<std::vector<Integer>> interior;  ///< [face][m]
};

/// Counts lattice points of degree m <= max_degree by enumerating m*K once per degree
/// and assigning each point to the face whose relative interior contains it, read off
/// from the set of facets it is tight on. A nonzero cap bounds the total number of
/// points visited (CapExceeded).
inline GradedCounts graded_counts(const GorensteinCone& c, const FacePoset& p, int max_degree,
                                  std::size_t cap = 0) {
  const std::size_t nf = p.size();
  GradedCounts g;
  g.full.assign(nf, std::vector<Integer>(max_degree + 1, Integer(0)));
  g.interior.assign(nf, std::vector<Integer>(max_degree + 1, Integer(0)));
  if (max_degree < 0) return g;
  std::vector<std::int64_t> tally(nf);
  std::size_t visited = 0;
  for (int m = 0; m <= max_degree; ++m) {
    std::fill(tally.begin(), tally.end(), 0);
    if (m == 0) {
      tally[p.bottom()] = 1;
    } else {
      Polytope mk = dilate(c.slice, Integer(m));
      Bitset tight(c.facet_normals.size());
      for_each_lattice_point(mk, [&](const IntVector& x) {
        if (cap != 0 && ++visited > cap) throw CapExceeded("graded counts: point cap exceeded");
        tight.reset();
        for (std::size_t f = 0; f < c.facet_normals.size(); ++f)
          if (dot(c.facet_normals[f], x).is_zero()) tight.set(f);
        auto it = p.by_facets.find(tight);
        if (it == p.by_facets.end()) throw std::logic_error("graded counts: point in no face interior");
        ++tally[it->second];
      });
    }
    for (std::size_t x = 0; x < nf; ++x) g.interior[x][m] = Integer(static_cast<long long>(tally[x]));
    for (std::size_t y = 0; y < nf; ++y) {
      std::int64_t s = 0;
      for (std::size_t x = p.down[y].find_first(); x != Bitset::npos; x = p.down[y].find_next(x)) s += tally[x];
      g.full[y][m] = Integer(static_cast<long long>(s));
    }
  }
  return g;
}

inline Integer graded_count(const GorensteinCone& c, const FacePoset& p, std::size_t face, int m, Region region) {
  auto g = graded_counts(c, p, m);
  return region == Region::full ? g.full[face][m] : g.interior[face][m];
}

}  // namespace cicy
