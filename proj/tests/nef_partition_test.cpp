#include "cicy/geometry/lattice_points.hpp"
#include "cicy/nef_partition.hpp"
#include "cicy/weights.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace cicy;

namespace {

Polytope square() { return Polytope::hull({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}); }

Polytope sextic() {
  IntMatrix w{{1, 1, 1, 1, 1, 1}};
  IntMatrix d{{6}};
  return cy_polytope({w, d}, NewtonMode::full_degree);
}

std::set<std::vector<std::vector<std::size_t>>> part_sets(const std::vector<NefPartition>& ps) {
  std::set<std::vector<std::vector<std::size_t>>> out;
  for (const auto& p : ps) out.insert(p.parts);
  return out;
}

// Every unordered partition into r nonempty parts, tested only with the nabla-side criterion.
std::set<std::vector<std::vector<std::size_t>>> brute_force(const Polytope& delta_dual, std::size_t r) {
  const std::size_t nv = delta_dual.vertices().size();
  std::set<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> color(nv, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < nv; ++i) total *= r;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < nv; ++i, c /= r) color[i] = c % r;
    std::vector<std::vector<std::size_t>> parts(r);
    for (std::size_t v = 0; v < nv; ++v) parts[color[v]].push_back(v);
    bool nonempty = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return !p.empty(); });
    if (!nonempty) continue;
    std::sort(parts.begin(), parts.end());
    if (nabla_side_test(delta_dual, parts)) out.insert(parts);
  }
  return out;
}

}  // namespace

TEST(NefPartition, CodimensionOneIsTheWholePolytope) {
  auto p = sextic();
  auto parts = enumerate_nef_partitions(dual(p), 1);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].delta_parts[0], p);
  EXPECT_EQ(parts[0].nabla, dual(p));
  EXPECT_TRUE(verify_pairing_box(parts[0]));
  auto d = dual_nef_partition(parts[0]);
  EXPECT_EQ(d.delta, dual(p));
  EXPECT_EQ(d.delta_dual, p);
}

TEST(NefPartition, SquareSplitsIntoSegments) {
  auto sq = square();
  auto cross = dual(sq);
  auto all = enumerate_nef_partitions(cross, 2);
  // cross vertices sorted: (-1,0), (0,-1), (0,1), (1,0)
  NefPartition* split = nullptr;
  for (auto& p : all)
    if (p.parts == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 2}}) split = &p;
  ASSERT_NE(split, nullptr);
  EXPECT_EQ(split->delta_parts[0], Polytope::hull({{-1, 0}, {1, 0}}));
  EXPECT_EQ(split->delta_parts[1], Polytope::hull({{0, -1}, {0, 1}}));
  EXPECT_EQ(minkowski_sum(split->delta_parts), sq);
  EXPECT_TRUE(verify_pairing_box(*split));
  auto d = dual_nef_partition(*split);
  EXPECT_EQ(d.delta_parts[0], split->nabla_parts[0]);
  EXPECT_EQ(d.delta_parts[1], split->nabla_parts[1]);
  EXPECT_EQ(count_lattice_points(d.delta_parts[0]), 3u);
}

TEST(NefPartition, CorruptedPartitionFailsPairingBox) {
  auto all = enumerate_nef_partitions(dual(square()), 2);
  ASSERT_FALSE(all.empty());
  NefPartition bad = all[0];
  std::swap(bad.parts[0].back(), bad.parts[1].back());
  std::vector<Polytope> nabla_parts;
  for (const auto& part : bad.parts) {
    std::vector<IntVector> pts{IntVector(2, Integer(0))};
    for (auto v : part) pts.push_back(bad.delta_dual.vertices()[v].num);
    nabla_parts.push_back(Polytope::hull(pts, Lattice::N));
  }
  bad.nabla_parts = nabla_parts;
  EXPECT_FALSE(verify_pairing_box(bad));
}

TEST(NefPartition, PrefilterAgreesWithBruteForce) {
  std::vector<Polytope> duals = {dual(square()), dual(sextic())};
  duals.push_back(Polytope::hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, Lattice::N));
  duals.push_back(Polytope::hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, Lattice::N));
  duals.push_back(dual(Polytope::hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}})));
  duals.push_back(Polytope::hull({{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}}, Lattice::N));
  for (const auto& dd : duals) {
    ASSERT_TRUE(is_reflexive(dd));
    for (std::size_t r = 1; r <= 3 && r <= dd.vertices().size(); ++r)
      EXPECT_EQ(part_sets(enumerate_nef_partitions(dd, r)), brute_force(dd, r)) << "r=" << r;
  }
}

TEST(NefPartition, SexticPartitionCounts) {
  auto dd = dual(sextic());
  auto two = enumerate_nef_partitions(dd, 2);
  // Simplex: every split of the vertices into two nonempty sets is nef.
  EXPECT_EQ(two.size(), 31u);
  std::size_t bound = (1u << (dd.vertices().size() - 1)) - 1;
  EXPECT_LE(two.size(), bound);
  auto ordered = enumerate_nef_partitions(dd, 2, true);
  EXPECT_EQ(ordered.size(), 2 * two.size());
}

TEST(NefPartition, DeltaSideConditionsAndInvolution) {
  auto dd = dual(sextic());
  for (const auto& p : enumerate_nef_partitions(dd, 2)) {
    EXPECT_EQ(minkowski_sum(p.delta_parts), p.delta);
    EXPECT_TRUE(verify_pairing_box(p));
    // support values at vertices: min over delta_i of <., e> is -1 exactly on E_i
    auto color = p.coloring();
    for (std::size_t v = 0; v < dd.vertices().size(); ++v) {
      const auto& e = dd.vertices()[v].num;
      std::size_t owners = 0;
      for (std::size_t i = 0; i < p.codim(); ++i) {
        Integer mn = 0;
        for (const auto& m : p.delta_parts[i].vertices()) mn = std::min(mn, dot(m.num, e));
        EXPECT_EQ(mn, color[v] == i ? Integer(-1) : Integer(0));
        owners += mn == Integer(-1);
      }
      EXPECT_EQ(owners, 1u);
    }
    auto back = dual_nef_partition(dual_nef_partition(p));
    EXPECT_EQ(back.parts, p.parts);
    EXPECT_EQ(back.delta, p.delta);
  }
}

TEST(NefPartition, MinkowskiDecompositionsInduceNefPartitions) {
  // Random pairs of small lattice polygons containing 0 whose sum is reflexive and
  // which meet only in 0; the induced partition of the dual's vertices must be nef.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coord(-1, 1), count(1, 3);
  const Polytope origin = Polytope::hull({{0, 0}});
  int hits = 0;
  for (int trial = 0; trial < 3000 && hits < 25; ++trial) {
    std::vector<Polytope> parts;
    for (int i = 0; i < 2; ++i) {
      std::vector<IntVector> pts{{0, 0}};
      int m = count(rng);
      for (int k = 0; k < m; ++k) pts.push_back({coord(rng), coord(rng)});
      parts.push_back(Polytope::hull(pts));
    }
    auto sum = minkowski_sum(parts);
    if (!is_reflexive(sum) || !(intersect(parts[0], parts[1]) == origin)) continue;
    if (parts[0].dim() < 1 || parts[1].dim() < 1) continue;
    ++hits;
    auto dd = dual(sum);
    std::vector<std::vector<std::size_t>> induced(2);
    for (std::size_t v = 0; v < dd.vertices().size(); ++v) {
      const auto& e = dd.vertices()[v].num;
      for (std::size_t i = 0; i < 2; ++i) {
        Integer mn = 0;
        for (const auto& m : parts[i].vertices()) mn = std::min(mn, dot(m.num, e));
        if (mn == Integer(-1)) induced[i].push_back(v);
      }
    }
    ASSERT_EQ(induced[0].size() + induced[1].size(), dd.vertices().size());
    ASSERT_TRUE(nabla_side_test(dd, induced));
    auto p = make_nef_partition(dd, induced);
    EXPECT_EQ(p.delta_parts[0], parts[0]);
    EXPECT_EQ(p.delta_parts[1], parts[1]);
  }
  EXPECT_GE(hits, 5);
}

TEST(NefPartition, RejectsNonReflexive) {
  auto tri = Polytope::hull({{-1, -1}, {3, -1}, {-1, 3}});
  EXPECT_THROW(enumerate_nef_partitions(tri, 2), NotReflexive);
}
