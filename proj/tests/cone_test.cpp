#include "cicy/cone.hpp"
#include "cicy/weights.hpp"

#include <gtest/gtest.h>

using namespace cicy;

namespace {

Polytope square() { return Polytope::hull({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}); }

Polytope sextic() {
  IntMatrix w{{1, 1, 1, 1, 1, 1}};
  IntMatrix d{{6}};
  return cy_polytope({w, d}, NewtonMode::full_degree);
}

// Brute-force count of lattice points of degree m on face x: scan a box and test
// the defining inequalities directly.
std::vector<std::int64_t> box_counts(const GorensteinCone& c, const FacePoset& p, int m, int bound) {
  std::vector<std::int64_t> interior(p.size(), 0);
  const std::size_t n = c.dim();
  IntVector x(n, Integer(0));
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == c.r) {
      if (left != 0) return;
      std::function<void(std::size_t)> inner = [&](std::size_t j) {
        if (j == n) {
          Bitset tight(c.facet_normals.size());
          for (std::size_t f = 0; f < c.facet_normals.size(); ++f) {
            auto v = dot(c.facet_normals[f], x);
            if (v.sign() < 0) return;
            if (v.is_zero()) tight.set(f);
          }
          ++interior[p.by_facets.at(tight)];
          return;
        }
        for (int t = -bound; t <= bound; ++t) {
          x[j] = t;
          inner(j + 1);
        }
      };
      inner(c.r);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      x[k] = a;
      rec(k + 1, left - a);
    }
  };
  rec(0, m);
  return interior;
}

}  // namespace

TEST(Cone, SegmentCone) {
  auto seg = Polytope::hull({{-1}, {1}});
  auto c = cone_from_parts({seg});
  EXPECT_EQ(c.rays, (std::vector<IntVector>{{1, -1}, {1, 1}}));
  EXPECT_EQ(c.facet_normals, (std::vector<IntVector>{{1, -1}, {1, 1}}));
  EXPECT_EQ(c.generators.size(), 3u);
  auto d = cone_from_parts({dual(seg)});
  EXPECT_NO_THROW(verify_duality(c, d));
  auto p = face_poset(c);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_TRUE(is_eulerian(p));
}

TEST(Cone, SquareConeFacesAndCounts) {
  auto sq = square();
  auto c = cone_from_parts({sq});
  auto p = face_poset(c);
  ASSERT_EQ(p.size(), 10u);
  std::vector<int> per_rank(4, 0);
  for (std::size_t x = 0; x < p.size(); ++x) ++per_rank[p.rank(x)];
  EXPECT_EQ(per_rank, (std::vector<int>{1, 4, 4, 1}));
  EXPECT_TRUE(is_eulerian(p));

  auto g = graded_counts(c, p, 3);
  const auto top = p.top();
  EXPECT_EQ(g.full[top], (std::vector<Integer>{1, 9, 25, 49}));
  EXPECT_EQ(g.interior[top], (std::vector<Integer>{0, 1, 9, 25}));
  for (int m = 0; m <= 3; ++m) {
    Integer s = 0;
    for (std::size_t x = 0; x < p.size(); ++x) s += g.interior[x][m];
    EXPECT_EQ(s, g.full[top][m]);
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.rank(x) == 1) EXPECT_EQ(g.full[x], (std::vector<Integer>{1, 1, 1, 1}));
  EXPECT_EQ(graded_count(c, p, top, 2, Region::interior), Integer(9));
}

TEST(Cone, DualityAndDualFaceMap) {
  std::vector<Polytope> duals = {dual(square()), dual(sextic())};
  for (const auto& dd : duals) {
    for (const auto& part : enumerate_nef_partitions(dd, 2)) {
      auto c = build_cone(part);
      auto d = dual_cone(part);
      ASSERT_NO_THROW(verify_duality(c, d));
      auto p = face_poset(c);
      auto q = face_poset(d);
      ASSERT_NO_THROW(link_dual_posets(p, c, q, d));
      EXPECT_EQ(p.size(), q.size());
      EXPECT_EQ(p.dual[p.bottom()], q.top());
      EXPECT_EQ(p.dual[p.top()], q.bottom());
      // order reversing
      for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < p.size(); ++y)
          if (p.leq(x, y)) EXPECT_TRUE(q.leq(p.dual[y], p.dual[x]));
      EXPECT_TRUE(is_eulerian(p));
      EXPECT_TRUE(is_eulerian(q));
    }
  }
}

TEST(Cone, MismatchedConesAreRejected) {
  auto sq = square();
  auto c = cone_from_parts({sq});
  auto wrong = cone_from_parts({sq});
  EXPECT_THROW(verify_duality(c, wrong), DualityMismatch);
  auto seg = Polytope::hull({{-1, 0}, {1, 0}});
  EXPECT_THROW(cone_from_parts({seg}), DegenerateCone);
}

TEST(Cone, GradedCountsMatchBoxScan) {
  auto all = enumerate_nef_partitions(dual(square()), 2);
  ASSERT_FALSE(all.empty());
  for (const auto& part : all) {
    for (const auto& c : {build_cone(part), dual_cone(part)}) {
      auto p = face_poset(c);
      auto g = graded_counts(c, p, 3);
      for (int m = 0; m <= 3; ++m) {
        auto box = box_counts(c, p, m, 2 * m + 1);
        for (std::size_t x = 0; x < p.size(); ++x) EXPECT_EQ(g.interior[x][m], Integer(box[x])) << "m=" << m;
      }
    }
  }
}

TEST(Cone, OctahedronFaceNumbers) {
  // Cone over the octahedron: f-vector of the polytope is (6, 12, 8).
  auto oct = Polytope::hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  auto c = cone_from_parts({oct});
  auto p = face_poset(c);
  std::vector<int> per_rank(5, 0);
  for (std::size_t x = 0; x < p.size(); ++x) ++per_rank[p.rank(x)];
  EXPECT_EQ(per_rank, (std::vector<int>{1, 6, 12, 8, 1}));
  EXPECT_TRUE(is_eulerian(p));
  auto d = cone_from_parts({dual(oct)});
  auto q = face_poset(d);
  ASSERT_NO_THROW(link_dual_posets(p, c, q, d));
}
