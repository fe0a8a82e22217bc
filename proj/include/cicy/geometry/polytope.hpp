#pragma once

#include "cicy/exact/matrix.hpp"
#include "cicy/geometry/double_description.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

/// Which of the two dual lattices a point or polytope lives in.
enum class Lattice { M, N };

inline Lattice opposite(Lattice l) { return l == Lattice::M ? Lattice::N : Lattice::M; }

class OriginNotInterior : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point with rational coordinates num / den (den > 0, gcd(num, den) = 1).
struct RationalPoint {
  IntVector num;
  Integer den = 1;

  RationalPoint() = default;
  explicit RationalPoint(IntVector v) : num(std::move(v)) {}
  RationalPoint(IntVector v, Integer d) : num(std::move(v)), den(std::move(d)) { normalize(); }

  [[nodiscard]] bool is_integral() const noexcept { return den.is_one(); }
  [[nodiscard]] std::size_t size() const noexcept { return num.size(); }
  [[nodiscard]] Rational coord(std::size_t i) const { return Rational(num[i], den); }

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    for (std::size_t i = 0; i < a.num.size(); ++i) {
      auto c = a.num[i] * b.den <=> b.num[i] * a.den;
      if (c != 0) return c < 0;
    }
    return false;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (i) s += ",";
      s += coord(i).to_string();
    }
    return s + ")";
  }

 private:
  void normalize() {
    if (den.sign() == 0) throw std::domain_error("RationalPoint with zero denominator");
    if (den.sign() < 0) {
      den = -den;
      for (auto& x : num) x = -x;
    }
    Integer g = gcd(content(num), den);
    if (!g.is_one()) {
      den /= g;
      for (auto& x : num) x /= g;
    }
  }
};

/// Affine form <normal, x> + offset; used as an inequality (>= 0) or equation (== 0).
///
/// For facets of a lattice polytope the normal is primitive, so the facet reads
/// <normal, x> >= -offset with the integer offset of the lattice-distance to 0.
struct HalfSpace {
  IntVector normal;
  Integer offset;

  [[nodiscard]] Integer evaluate(std::span<const Integer> x) const { return dot(normal, x) + offset; }
  /// Sign of the form at a rational point.
  [[nodiscard]] int sign_at(const RationalPoint& p) const {
    Integer v = dot(normal, p.num);
    v.add_product(offset, p.den);
    return v.sign();
  }
  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// Convex polytope with rational vertices in R^n, kept in both V- and H-representation.
///
/// Lower-dimensional polytopes live in ambient coordinates: `equations()` span the
/// affine hull and the facet normals vanish outside the free coordinates, a set of
/// coordinates onto which the affine hull projects bijectively.
class Polytope {
 public:
  Polytope() = default;

  static Polytope empty(std::size_t ambient, Lattice side = Lattice::M) {
    Polytope p;
    p.ambient_ = ambient;
    p.side_ = side;
    p.dim_ = -1;
    return p;
  }

  static Polytope hull(const std::vector<IntVector>& points, Lattice side = Lattice::M) {
    if (points.empty()) throw std::invalid_argument("convex hull of no points needs an ambient dimension");
    std::vector<RationalPoint> rp;
    rp.reserve(points.size());
    for (const auto& p : points) rp.emplace_back(p);
    return hull(std::move(rp), points.front().size(), side);
  }

  static Polytope hull(std::vector<RationalPoint> points, std::size_t ambient, Lattice side);

  /// {x : <a, x> + b >= 0 for inequalities, == 0 for equations}. Must be bounded.
  static Polytope from_inequalities(std::size_t ambient, const std::vector<HalfSpace>& inequalities,
                                    const std::vector<HalfSpace>& equations, Lattice side);

  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  /// Intrinsic dimension; -1 for the empty polytope.
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] bool is_empty() const noexcept { return dim_ < 0; }
  [[nodiscard]] bool is_full_dimensional() const noexcept {
    return dim_ == static_cast<int>(ambient_);
  }
  [[nodiscard]] Lattice side() const noexcept { return side_; }
  [[nodiscard]] const std::vector<RationalPoint>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<HalfSpace>& facets() const noexcept { return facets_; }
  [[nodiscard]] const std::vector<HalfSpace>& equations() const noexcept { return equations_; }
  [[nodiscard]] const std::vector<std::size_t>& free_coordinates() const noexcept { return free_; }
  /// incidence()[f] has bit v set iff vertex v lies on facet f.
  [[nodiscard]] const std::vector<Bitset>& incidence() const noexcept { return incidence_; }

  [[nodiscard]] bool is_lattice_polytope() const {
    return std::all_of(vertices_.begin(), vertices_.end(),
                       [](const RationalPoint& v) { return v.is_integral(); });
  }
  /// Vertex coordinates; throws if some vertex is not a lattice point.
  [[nodiscard]] std::vector<IntVector> integral_vertices() const {
    std::vector<IntVector> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) {
      if (!v.is_integral()) throw std::domain_error("polytope has a non-integral vertex");
      out.push_back(v.num);
    }
    return out;
  }

  [[nodiscard]] bool contains(const RationalPoint& p) const {
    if (is_empty()) return false;
    for (const auto& e : equations_)
      if (e.sign_at(p) != 0) return false;
    for (const auto& f : facets_)
      if (f.sign_at(p) < 0) return false;
    return true;
  }
  [[nodiscard]] bool contains(const IntVector& p) const { return contains(RationalPoint(p)); }

  /// True iff p lies in the relative interior.
  [[nodiscard]] bool relative_interior_contains(const RationalPoint& p) const {
    if (is_empty()) return false;
    for (const auto& e : equations_)
      if (e.sign_at(p) != 0) return false;
    for (const auto& f : facets_)
      if (f.sign_at(p) <= 0) return false;
    return true;
  }

  /// Structural equality: same ambient dimension and vertex set.
  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t ambient_ = 0;
  Lattice side_ = Lattice::M;
  int dim_ = -1;
  std::vector<RationalPoint> vertices_;
  std::vector<HalfSpace> facets_;
  std::vector<HalfSpace> equations_;
  std::vector<std::size_t> free_;
  std::vector<Bitset> incidence_;
};

namespace detail {

/// Ordering heuristic for double description: points far from the centroid first.
inline std::vector<std::size_t> extremeness_order(const std::vector<RationalPoint>& pts) {
  const std::size_t m = pts.size(), n = pts.empty() ? 0 : pts[0].size();
  std::vector<Rational> sum(n, Rational(0));
  for (const auto& p : pts)
    for (std::size_t j = 0; j < n; ++j) sum[j] += p.coord(j);
  std::vector<Rational> key(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational d = pts[i].coord(j) * Rational(static_cast<long long>(m)) - sum[j];
      key[i] += d.sign() < 0 ? -d : d;
    }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return order;
}

}  // namespace detail

inline Polytope Polytope::hull(std::vector<RationalPoint> points, std::size_t ambient, Lattice side) {
  for (const auto& p : points)
    if (p.size() != ambient) throw std::invalid_argument("convex hull: point dimension mismatch");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return empty(ambient, side);

  Polytope poly;
  poly.ambient_ = ambient;
  poly.side_ = side;

  // Homogeneous rows (den, num); pick an affinely independent subset greedily.
  auto homog = [&](const RationalPoint& p) {
    IntVector h;
    h.reserve(ambient + 1);
    h.push_back(p.den);
    h.insert(h.end(), p.num.begin(), p.num.end());
    return h;
  };
  std::vector<IntVector> indep;
  std::size_t current_rank = 0;
  for (const auto& p : points) {
    if (current_rank == ambient + 1) break;
    indep.push_back(homog(p));
    std::size_t r = rank(indep, ambient + 1);
    if (r > current_rank) current_rank = r;
    else indep.pop_back();
  }
  const std::size_t k = current_rank - 1;
  poly.dim_ = static_cast<int>(k);

  // Affine hull equations: integer kernel of the homogeneous matrix.
  for (auto& e : kernel_lattice_basis(IntMatrix::from_rows(indep, ambient + 1))) {
    HalfSpace eq;
    eq.offset = e[0];
    eq.normal.assign(e.begin() + 1, e.end());
    poly.equations_.push_back(std::move(eq));
  }

  // Free coordinates: the homogeneous column plus k coordinate columns of full rank.
  {
    std::vector<std::size_t> cols{0};
    auto column_rank = [&](const std::vector<std::size_t>& cs) {
      std::vector<IntVector> rows;
      for (const auto& r : indep) {
        IntVector sub;
        for (auto c : cs) sub.push_back(r[c]);
        rows.push_back(std::move(sub));
      }
      return rank(rows, cs.size());
    };
    for (std::size_t c = 1; c <= ambient && cols.size() < k + 1; ++c) {
      cols.push_back(c);
      if (column_rank(cols) < cols.size()) cols.pop_back();
    }
    for (std::size_t i = 1; i < cols.size(); ++i) poly.free_.push_back(cols[i] - 1);
  }

  if (k == 0) {
    poly.vertices_ = {points.front()};
    return poly;
  }

  // Facets: extreme rays of {(c, a_J) : c*den + <a_J, num_J> >= 0 for all points}.
  auto order = detail::extremeness_order(points);
  std::vector<IntVector> rows;
  rows.reserve(points.size());
  for (auto idx : order) {
    IntVector r;
    r.reserve(k + 1);
    r.push_back(points[idx].den);
    for (auto c : poly.free_) r.push_back(points[idx].num[c]);
    rows.push_back(std::move(r));
  }
  ExtremeRays er = extreme_rays(rows, k + 1);

  // Vertices: points whose tight facets have normals spanning the free coordinates.
  const std::size_t nf = er.rays.size();
  std::vector<Bitset> point_facets(points.size(), Bitset(nf));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (er.tight[f].test(r)) point_facets[order[r]].set(f);

  std::vector<std::size_t> vertex_ids;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (point_facets[i].count() < k) continue;
    std::vector<IntVector> normals;
    for (std::size_t f = point_facets[i].find_first(); f != Bitset::npos; f = point_facets[i].find_next(f))
      normals.emplace_back(er.rays[f].begin() + 1, er.rays[f].end());
    if (rank(normals, k) == k) vertex_ids.push_back(i);
  }

  // Facets sorted canonically; incidence rebuilt over the sorted vertex list.
  std::vector<HalfSpace> facets;
  for (const auto& ray : er.rays) {
    HalfSpace h;
    h.offset = ray[0];
    h.normal.assign(ambient, Integer(0));
    for (std::size_t j = 0; j < k; ++j) h.normal[poly.free_[j]] = ray[j + 1];
    facets.push_back(std::move(h));
  }
  std::vector<std::size_t> forder(nf);
  std::iota(forder.begin(), forder.end(), 0);
  std::sort(forder.begin(), forder.end(), [&](auto a, auto b) { return facets[a] < facets[b]; });

  for (auto i : vertex_ids) poly.vertices_.push_back(points[i]);  // points are sorted already
  for (auto f : forder) {
    poly.facets_.push_back(facets[f]);
    Bitset inc(vertex_ids.size());
    for (std::size_t v = 0; v < vertex_ids.size(); ++v)
      if (point_facets[vertex_ids[v]].test(f)) inc.set(v);
    poly.incidence_.push_back(std::move(inc));
  }
  return poly;
}

inline Polytope Polytope::from_inequalities(std::size_t ambient, const std::vector<HalfSpace>& inequalities,
                                            const std::vector<HalfSpace>& equations, Lattice side) {
  std::vector<IntVector> rows;
  auto add = [&](const HalfSpace& h, bool negate) {
    IntVector r;
    r.reserve(ambient + 1);
    r.push_back(negate ? -h.offset : h.offset);
    for (const auto& x : h.normal) r.push_back(negate ? -x : x);
    rows.push_back(std::move(r));
  };
  for (const auto& e : equations) {
    add(e, false);
    add(e, true);
  }
  for (const auto& h : inequalities) add(h, false);
  IntVector t(ambient + 1, Integer(0));
  t[0] = 1;
  rows.push_back(std::move(t));

  ExtremeRays er;
  try {
    er = extreme_rays(rows, ambient + 1);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("from_inequalities: polyhedron is unbounded");
  }
  std::vector<RationalPoint> verts;
  for (const auto& ray : er.rays) {
    if (ray[0].is_zero()) throw std::invalid_argument("from_inequalities: polyhedron is unbounded");
    verts.emplace_back(IntVector(ray.begin() + 1, ray.end()), ray[0]);
  }
  if (verts.empty()) return Polytope::empty(ambient, side);
  return hull(std::move(verts), ambient, side);
}

// ---------------------------------------------------------------------------
// Operations

inline Polytope dual(const Polytope& p) {
  if (!p.is_full_dimensional()) throw OriginNotInterior("dual: polytope is not full-dimensional");
  std::vector<RationalPoint> verts;
  for (const auto& f : p.facets()) {
    if (f.offset.sign() <= 0) throw OriginNotInterior("dual: origin is not strictly interior");
    verts.emplace_back(f.normal, f.offset);
  }
  return Polytope::hull(std::move(verts), p.ambient_dim(), opposite(p.side()));
}

/// Full-dimensional lattice polytope whose facets all have lattice distance 1 from 0.
inline bool is_reflexive(const Polytope& p) {
  if (!p.is_full_dimensional() || !p.is_lattice_polytope()) return false;
  for (const auto& f : p.facets())
    if (!f.offset.is_one()) return false;
  return true;
}

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (a.side() != b.side()) throw std::invalid_argument("minkowski_sum: lattice mismatch");
  if (a.is_empty() || b.is_empty()) return Polytope::empty(a.ambient_dim(), a.side());
  std::vector<RationalPoint> pts;
  pts.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& x : a.vertices())
    for (const auto& y : b.vertices()) {
      IntVector s(x.num.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = x.num[i] * y.den;
        s[i].add_product(y.num[i], x.den);
      }
      pts.emplace_back(std::move(s), x.den * y.den);
    }
  return Polytope::hull(std::move(pts), a.ambient_dim(), a.side());
}

inline Polytope minkowski_sum(const std::vector<Polytope>& parts) {
  if (parts.empty()) throw std::invalid_argument("minkowski_sum of no polytopes");
  Polytope s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s = minkowski_sum(s, parts[i]);
  return s;
}

inline Polytope intersect(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: dimension mismatch");
  if (a.is_empty() || b.is_empty()) return Polytope::empty(a.ambient_dim(), a.side());
  std::vector<HalfSpace> ineq = a.facets(), eq = a.equations();
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  eq.insert(eq.end(), b.equations().begin(), b.equations().end());
  return Polytope::from_inequalities(a.ambient_dim(), ineq, eq, a.side());
}

/// k * P for an integer k >= 0.
inline Polytope dilate(const Polytope& p, const Integer& k) {
  if (k.sign() < 0) throw std::invalid_argument("dilate: negative factor");
  if (p.is_empty()) return p;
  std::vector<RationalPoint> verts;
  for (const auto& v : p.vertices()) verts.emplace_back(scaled(v.num, k), v.den);
  return Polytope::hull(std::move(verts), p.ambient_dim(), p.side());
}

inline Polytope translate(const Polytope& p, const IntVector& t) {
  if (p.is_empty()) return p;
  std::vector<RationalPoint> verts;
  for (const auto& v : p.vertices()) {
    IntVector s = v.num;
    for (std::size_t i = 0; i < s.size(); ++i) s[i].add_product(t[i], v.den);
    verts.emplace_back(std::move(s), v.den);
  }
  return Polytope::hull(std::move(verts), p.ambient_dim(), p.side());
}

}  // namespace cicy
