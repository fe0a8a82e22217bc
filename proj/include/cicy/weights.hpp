#pragma once

#include "cicy/exact/matrix.hpp"
#include "cicy/geometry/lattice_points.hpp"
#include "cicy/geometry/polytope.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

class EmptyNewton : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stacked weight systems: W is s x n (one row per scaling relation, one column per
/// homogeneous coordinate) and D is r x s (one row of degrees per equation).
struct WeightBlock {
  IntMatrix weights;
  IntMatrix degrees;

  [[nodiscard]] std::size_t relations() const noexcept { return weights.rows(); }
  [[nodiscard]] std::size_t coordinates() const noexcept { return weights.cols(); }
  [[nodiscard]] std::size_t equations() const noexcept { return degrees.rows(); }

  /// Throws std::invalid_argument describing the first violated condition.
  void validate() const {
    const std::size_t s = relations(), n = coordinates();
    if (s == 0 || n == 0) throw std::invalid_argument("weight block: empty weight matrix");
    if (equations() == 0) throw std::invalid_argument("weight block: no equations");
    if (degrees.cols() != s) throw std::invalid_argument("weight block: degree rows must have one entry per relation");
    for (std::size_t i = 0; i < s; ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (weights(i, j).sign() < 0) throw std::invalid_argument("weight block: negative weight");
        nonzero |= !weights(i, j).is_zero();
      }
      if (!nonzero) throw std::invalid_argument("weight block: zero weight row");
    }
    for (std::size_t j = 0; j < n; ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < s; ++i) nonzero |= !weights(i, j).is_zero();
      if (!nonzero) throw std::invalid_argument("weight block: coordinate " + std::to_string(j) + " has no weight");
    }
    for (std::size_t k = 0; k < equations(); ++k)
      for (std::size_t i = 0; i < s; ++i)
        if (degrees(k, i).sign() < 0) throw std::invalid_argument("weight block: negative degree");
  }

  /// Total degree per relation summed over all equations.
  [[nodiscard]] IntVector total_degree() const {
    IntVector t(relations(), Integer(0));
    for (std::size_t k = 0; k < equations(); ++k)
      for (std::size_t i = 0; i < relations(); ++i) t[i] += degrees(k, i);
    return t;
  }

  /// Calabi-Yau condition: degrees of each relation add up to its weight sum.
  [[nodiscard]] bool satisfies_cy() const {
    IntVector t = total_degree();
    for (std::size_t i = 0; i < relations(); ++i) {
      Integer w = 0;
      for (std::size_t j = 0; j < coordinates(); ++j) w += weights(i, j);
      if (w != t[i]) return false;
    }
    return true;
  }
};

enum class NewtonMode { full_degree, minkowski };

/// All m >= 0 in Z^n with W m = degree, in lexicographic order.
inline std::vector<IntVector> exponent_vectors(const IntMatrix& w, const IntVector& degree) {
  const std::size_t s = w.rows(), n = w.cols();
  std::vector<IntVector> out;
  IntVector rem = degree, m(n, Integer(0));
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      if (is_zero_vector(rem)) out.push_back(m);
      return;
    }
    // Largest exponent allowed by every relation with positive weight on coordinate j.
    Integer bound = -1;
    for (std::size_t i = 0; i < s; ++i) {
      if (w(i, j).is_zero()) continue;
      Integer b = floor_div(rem[i], w(i, j));
      if (bound.sign() < 0 || b < bound) bound = b;
    }
    if (bound.sign() < 0) return;
    for (Integer e = 0; e <= bound; e += 1) {
      m[j] = e;
      for (std::size_t i = 0; i < s; ++i) rem[i].add_product(w(i, j), -e);
      rec(j + 1);
      for (std::size_t i = 0; i < s; ++i) rem[i].add_product(w(i, j), e);
    }
    m[j] = 0;
  };
  rec(0);
  return out;
}

/// Newton polytope of a degree vector: hull of the exponent vectors, kept in Z^n.
inline Polytope newton_polytope(const IntMatrix& w, const IntVector& degree) {
  auto pts = exponent_vectors(w, degree);
  if (pts.empty()) throw EmptyNewton("no monomial has degree " + to_string(degree));
  return Polytope::hull(pts, Lattice::M);
}

/// Newton polytope of equation k of the block.
inline Polytope newton_polytope(const WeightBlock& block, std::size_t k) {
  block.validate();
  if (k >= block.equations()) throw std::out_of_range("newton_polytope: equation index");
  return newton_polytope(block.weights, block.degrees.row_vector(k));
}

/// Coordinates on the lattice {m : W m = 0} in a fixed HNF basis.
class KernelProjection {
 public:
  explicit KernelProjection(const IntMatrix& w) : basis_(kernel_lattice_basis(w)), ambient_(w.cols()) {
    for (const auto& b : basis_) {
      std::size_t p = 0;
      while (b[p].is_zero()) ++p;
      pivots_.push_back(p);
    }
    const std::size_t k = basis_.size();
    square_ = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) square_(j, i) = basis_[i][pivots_[j]];
  }

  [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<IntVector>& basis() const noexcept { return basis_; }

  /// Coefficients c with x = sum c_i basis_i; throws if x is not in the kernel lattice.
  [[nodiscard]] IntVector project(const IntVector& x) const {
    IntVector rhs;
    for (auto p : pivots_) rhs.push_back(x[p]);
    auto c = solve(square_, rhs);
    if (!c) throw std::logic_error("kernel projection: singular pivot block");
    IntVector out;
    for (const auto& q : *c) {
      if (!q.is_integer()) throw std::invalid_argument("kernel projection: point not in lattice");
      out.push_back(q.num());
    }
    if (lift(out) != x) throw std::invalid_argument("kernel projection: point not in kernel");
    return out;
  }

  [[nodiscard]] IntVector lift(const IntVector& c) const {
    IntVector x(ambient_, Integer(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) x[j].add_product(c[i], basis_[i][j]);
    return x;
  }

 private:
  std::vector<IntVector> basis_;
  std::size_t ambient_;
  std::vector<std::size_t> pivots_;
  IntMatrix square_;
};

/// The Calabi-Yau polytope of a block: Newton polytope of the total degree (full_degree)
/// or Minkowski sum of the per-equation Newton polytopes (minkowski), translated by
/// -(1,...,1) and written in coordinates of the kernel lattice of W.
inline Polytope cy_polytope(const WeightBlock& block, NewtonMode mode) {
  block.validate();
  if (!block.satisfies_cy()) throw std::invalid_argument("weight block violates the Calabi-Yau condition");
  const std::size_t n = block.coordinates();

  Polytope ambient;
  if (mode == NewtonMode::full_degree || block.equations() == 1) {
    ambient = newton_polytope(block.weights, block.total_degree());
  } else {
    std::vector<Polytope> parts;
    for (std::size_t k = 0; k < block.equations(); ++k) parts.push_back(newton_polytope(block, k));
    ambient = minkowski_sum(parts);
  }

  KernelProjection proj(block.weights);
  IntVector ones(n, Integer(1));
  std::vector<IntVector> verts;
  for (const auto& v : ambient.integral_vertices()) verts.push_back(proj.project(v - ones));
  Polytope p = Polytope::hull(verts, Lattice::M);
  if (!p.is_full_dimensional()) throw OriginNotInterior("CY polytope is not full-dimensional in the kernel lattice");
  for (const auto& f : p.facets())
    if (f.offset.sign() <= 0) throw OriginNotInterior("(1,...,1) is not an interior exponent vector");
  return p;
}

}  // namespace cicy
