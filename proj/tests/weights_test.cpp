#include "cicy/geometry/lattice_points.hpp"
#include "cicy/weights.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cicy;

namespace {

WeightBlock block(std::vector<std::vector<long long>> w, std::vector<std::vector<long long>> d) {
  auto to_rows = [](const std::vector<std::vector<long long>>& m) {
    std::vector<IntVector> rows;
    for (const auto& r : m) {
      IntVector v;
      for (auto x : r) v.emplace_back(x);
      rows.push_back(v);
    }
    return rows;
  };
  return {IntMatrix::from_rows(to_rows(w), w[0].size()), IntMatrix::from_rows(to_rows(d), d[0].size())};
}

}  // namespace

TEST(Weights, SegmentNewtonPolytope) {
  auto b = block({{1, 1}}, {{2}});
  auto p = newton_polytope(b, 0);
  EXPECT_EQ(p.dim(), 1);
  EXPECT_EQ(lattice_points(p), (std::vector<IntVector>{{0, 2}, {1, 1}, {2, 0}}));
}

TEST(Weights, EmptyNewtonPolytope) {
  auto b = block({{2, 2}}, {{3}});
  EXPECT_THROW(newton_polytope(b, 0), EmptyNewton);
}

TEST(Weights, EqualWeightCountsAreBinomials) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 6; ++d) {
      IntMatrix w(1, n);
      for (int j = 0; j < n; ++j) w(0, j) = 1;
      auto p = newton_polytope(w, IntVector{Integer(d)});
      EXPECT_EQ(Integer(static_cast<long long>(count_lattice_points(p))), binomial(d + n - 1, n - 1));
    }
}

TEST(Weights, SexticSimplex) {
  auto b = block({{1, 1, 1, 1, 1, 1}}, {{6}});
  auto newton = newton_polytope(b, 0);
  EXPECT_EQ(newton.vertices().size(), 6u);
  EXPECT_EQ(count_lattice_points(newton), 462u);

  auto p = cy_polytope(b, NewtonMode::full_degree);
  EXPECT_EQ(p.ambient_dim(), 5u);
  EXPECT_EQ(p.vertices().size(), 6u);
  EXPECT_EQ(p.facets().size(), 6u);
  EXPECT_EQ(count_lattice_points(p), 462u);
  ASSERT_TRUE(is_reflexive(p));
  auto d = dual(p);
  EXPECT_EQ(d.vertices().size(), 6u);
  EXPECT_EQ(count_lattice_points(d), 7u);
}

TEST(Weights, DegreeTwelveSimplex) {
  auto p = cy_polytope(block({{1, 1, 2, 2, 3, 3}}, {{12}}), NewtonMode::full_degree);
  EXPECT_EQ(count_lattice_points(p), 407u);
  EXPECT_EQ(p.vertices().size(), 6u);
  ASSERT_TRUE(is_reflexive(p));
  auto d = dual(p);
  EXPECT_EQ(count_lattice_points(d), 7u);
  EXPECT_EQ(d.vertices().size(), 6u);
}

TEST(Weights, DegreeSevenIsNotReflexive) {
  auto p = cy_polytope(block({{1, 1, 1, 1, 1, 2}}, {{7}}), NewtonMode::full_degree);
  EXPECT_FALSE(is_reflexive(p));
  EXPECT_FALSE(dual(p).is_lattice_polytope());
}

TEST(Weights, FullDegreeVersusMinkowski) {
  auto b = block({{1, 1, 1, 1, 2, 3}}, {{5}, {4}});
  auto full = cy_polytope(b, NewtonMode::full_degree);
  auto mink = cy_polytope(b, NewtonMode::minkowski);
  EXPECT_EQ(count_lattice_points(full), 575u);
  EXPECT_FALSE(is_reflexive(full));
  EXPECT_FALSE(is_reflexive(mink));
  for (const auto& v : mink.vertices()) EXPECT_TRUE(full.contains(v));

  // Oracle: distinct products of a degree-5 and a degree-4 monomial. Every such
  // product lies in the sum, and the sum has no lattice points beyond them here.
  auto d5 = exponent_vectors(b.weights, IntVector{5});
  auto d4 = exponent_vectors(b.weights, IntVector{4});
  std::set<IntVector> products;
  for (const auto& x : d5)
    for (const auto& y : d4) products.insert(x + y);
  EXPECT_EQ(count_lattice_points(mink), products.size());
  EXPECT_EQ(products.size(), 574u);
}

TEST(Weights, SimplexModesAgree) {
  auto b = block({{1, 1, 1, 1, 1, 1}}, {{2}, {4}});
  auto full = cy_polytope(b, NewtonMode::full_degree);
  auto mink = cy_polytope(b, NewtonMode::minkowski);
  EXPECT_EQ(full, mink);
  EXPECT_EQ(count_lattice_points(full), 462u);
}

TEST(Weights, ProjectionPreservesCounts) {
  // Product of weighted spaces: (3;1,1,1,0,0,0,0)+(4;0,0,0,1,1,1,1)
  auto w = block({{1, 1, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 1, 1}}, {{3, 4}});
  auto ambient = newton_polytope(w, 0);
  auto p = cy_polytope(w, NewtonMode::full_degree);
  EXPECT_EQ(count_lattice_points(ambient), count_lattice_points(p));
  EXPECT_EQ(count_lattice_points(p), 350u);
  EXPECT_EQ(p.vertices().size(), 12u);
  ASSERT_TRUE(is_reflexive(p));
  auto d = dual(p);
  EXPECT_EQ(count_lattice_points(d), 8u);
  EXPECT_EQ(d.vertices().size(), 7u);
}

TEST(Weights, ProjectionIsDeterministic) {
  auto b = block({{1, 1, 2, 2, 3, 3}}, {{12}});
  EXPECT_EQ(cy_polytope(b, NewtonMode::full_degree), cy_polytope(b, NewtonMode::full_degree));
  KernelProjection proj(b.weights);
  EXPECT_EQ(proj.rank(), 5u);
  IntVector x{2, 0, -1, 0, 0, 0};
  EXPECT_EQ(proj.lift(proj.project(x)), x);
}

TEST(Weights, RejectsInvalidBlocks) {
  EXPECT_THROW(cy_polytope(block({{1, 1, 1}}, {{4}}), NewtonMode::full_degree), std::invalid_argument);
  EXPECT_THROW(block({{1, 0}}, {{1}}).validate(), std::invalid_argument);
  EXPECT_THROW(block({{1, -1}}, {{0}}).validate(), std::invalid_argument);
}
