#include "cicy/hodge.hpp"
#include "cicy/weights.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cicy;

namespace {

using Pair = std::pair<long long, long long>;

LaurentBivariate u() { return LaurentBivariate::monomial(Integer(1), 1, 0); }
LaurentBivariate v() { return LaurentBivariate::monomial(Integer(1), 0, 1); }

Polytope square() { return Polytope::hull({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}); }

Polytope weighted(IntMatrix w, IntMatrix d, NewtonMode mode = NewtonMode::full_degree) {
  return cy_polytope({std::move(w), std::move(d)}, mode);
}

Pair pair_of(const HodgeData& h) { return {h.h11().to_int64(), h.h21().to_int64()}; }

// Hypersurface Hodge numbers of a reflexive 4-polytope from lattice-point data alone:
// h21 = l(P) - 5 - sum over facets of interior points + sum over codim-2 faces of
// interior points times interior points of the dual edge, and h11 likewise from the dual.
long long hypersurface_count(const Polytope& p) {
  long long total = 0, on_one = 0, ridge_terms = 0;
  const auto& facets = p.facets();
  for (const auto& x : lattice_points(p)) {
    ++total;
    std::vector<std::size_t> tight;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (facets[f].evaluate(x).is_zero()) tight.push_back(f);
    if (tight.size() == 1) ++on_one;
    if (tight.size() == 2) {
      auto diff = facets[tight[0]].normal - facets[tight[1]].normal;
      ridge_terms += content(diff).to_int64() - 1;
    }
  }
  return total - 5 - on_one + ridge_terms;
}

Pair hypersurface_oracle(const Polytope& delta) { return {hypersurface_count(dual(delta)), hypersurface_count(delta)}; }

HodgeData hypersurface(const Polytope& delta) {
  auto parts = enumerate_nef_partitions(dual(delta), 1);
  EXPECT_EQ(parts.size(), 1u);
  return compute_hodge(parts.at(0));
}

}  // namespace

TEST(BPolynomial, SmallIntervals) {
  auto c = cone_from_parts({square()});
  auto p = face_poset(c);
  BPolynomials b(p);
  EXPECT_EQ(b(0, 0), LaurentBivariate(1));
  for (std::size_t y = 0; y < p.size(); ++y)
    if (p.rank(y) == 1) EXPECT_EQ(b(0, y), LaurentBivariate(1) - u());
}

TEST(BPolynomial, BooleanIntervalsArePowersOfOneMinusU) {
  // Cone over a simplex: every interval is Boolean.
  auto q = weighted({{1, 1, 1, 1, 1}}, {{5}});
  auto c = cone_from_parts({q});
  auto p = face_poset(c);
  ASSERT_EQ(p.size(), 32u);
  BPolynomials b(p);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = p.up[x].find_first(); y != Bitset::npos; y = p.up[x].find_next(y))
      EXPECT_EQ(b(x, y), (LaurentBivariate(1) - u()).pow(p.rank(y) - p.rank(x)));
}

TEST(BPolynomial, DualityOnEveryInterval) {
  auto sextic = weighted({{1, 1, 1, 1, 1, 1}}, {{6}});
  auto parts = enumerate_nef_partitions(dual(sextic), 2);
  ASSERT_FALSE(parts.empty());
  auto cp = build_cone_pair(parts.back());
  BPolynomials b(cp.poset), bd(cp.dual_poset);
  const auto& p = cp.poset;
  std::size_t checked = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = p.up[x].find_first(); y != Bitset::npos; y = p.up[x].find_next(y)) {
      const int d = p.rank(y) - p.rank(x);
      auto rhs = laurent_substitute(bd(p.dual[y], p.dual[x]), Axis::u).shifted(d, 0);
      if (d % 2) rhs = -rhs;
      EXPECT_EQ(b(x, y), rhs);
      ++checked;
    }
  EXPECT_GT(checked, 1000u);
}

TEST(FaceSeries, ZeroFaceRayAndSquare) {
  auto c = cone_from_parts({square()});
  auto p = face_poset(c);
  auto g = graded_counts(c, p, 4);
  auto zero = face_series(g, p.bottom(), 0);
  EXPECT_EQ(zero.s, UnivariatePoly({1}));
  EXPECT_EQ(zero.t, UnivariatePoly({1}));
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.rank(x) == 1) {
      auto st = face_series(g, x, 1);
      EXPECT_EQ(st.s, UnivariatePoly({1}));
      EXPECT_EQ(st.t, UnivariatePoly({0, 1}));
    }
  auto top = face_series(g, p.top(), 3);
  EXPECT_EQ(top.s, UnivariatePoly({1, 6, 1}));
  EXPECT_EQ(top.t, UnivariatePoly({0, 1, 6, 1}));
}

TEST(FaceSeries, CorruptedCountsAreRejected) {
  auto c = cone_from_parts({square()});
  auto p = face_poset(c);
  auto g = graded_counts(c, p, 4);
  auto bad = g;
  bad.full[p.top()][3] += Integer(1);
  EXPECT_THROW(face_series(bad, p.top(), 3), NotPolynomial);
  bad = g;
  bad.interior[p.top()][1] += Integer(1);
  EXPECT_THROW(face_series(bad, p.top(), 2), NotPolynomial);
}

TEST(EPolynomial, EllipticCurve) {
  auto parts = enumerate_nef_partitions(dual(square()), 1);
  ASSERT_EQ(parts.size(), 1u);
  auto cp = build_cone_pair(parts[0]);
  auto e = e_polynomial(cp);
  EXPECT_EQ(e, LaurentBivariate(1) - u() - v() + u() * v());
  auto h = hodge_numbers(e, 1);
  EXPECT_EQ(h.h, (std::vector<std::vector<Integer>>{{1, 1}, {1, 1}}));
  EXPECT_EQ(h.chi, Integer(0));
  EXPECT_EQ(cross_check_A(cp), e);
  EXPECT_TRUE(mirror_check(h, h));
}

TEST(EPolynomial, CrossCheckOnToyInstances) {
  // two points
  auto seg = Polytope::hull({{-1}, {1}});
  auto segs = enumerate_nef_partitions(dual(seg), 1);
  ASSERT_EQ(segs.size(), 1u);
  auto cs = build_cone_pair(segs[0]);
  EXPECT_EQ(e_polynomial(cs), LaurentBivariate(2));
  EXPECT_EQ(cross_check_A(cs), LaurentBivariate(2));
  // square/cross, r = 2
  for (const auto& dd : {dual(square()), Polytope::hull(square().integral_vertices(), Lattice::N)}) {
    for (const auto& part : enumerate_nef_partitions(dd, 2)) {
      auto cp = build_cone_pair(part);
      auto e = e_polynomial(cp);
      EXPECT_EQ(cross_check_A(cp), e);
      EXPECT_TRUE(e.is_polynomial());
      EXPECT_EQ(e.max_u(), 0);
    }
  }
}

TEST(EPolynomial, CapExceeded) {
  auto parts = enumerate_nef_partitions(dual(square()), 1);
  auto cp = build_cone_pair(parts[0]);
  EXPECT_THROW(cross_check_A(cp, 5), CapExceeded);
}

TEST(Hodge, HypersurfacesAgreeWithLatticePointOracle) {
  std::vector<Polytope> cases;
  cases.push_back(weighted({{1, 1, 1, 1, 1}}, {{5}}));
  cases.push_back(weighted({{1, 1, 2, 2, 2}}, {{8}}));
  std::vector<IntVector> cube;
  for (int m = 0; m < 16; ++m) {
    IntVector x;
    for (int k = 0; k < 4; ++k) x.push_back((m >> k) & 1 ? 1 : -1);
    cube.push_back(x);
  }
  cases.push_back(Polytope::hull(cube));
  const std::vector<Pair> expected = {{1, 101}, {2, 86}, {4, 68}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto h = hypersurface(cases[i]);
    EXPECT_EQ(pair_of(h), hypersurface_oracle(cases[i]));
    EXPECT_EQ(pair_of(h), expected[i]);
    EXPECT_EQ(h.chi, Integer(2) * (h.h11() - h.h21()));
  }
}

TEST(Hodge, SexticCodimensionTwo) {
  auto dd = dual(weighted({{1, 1, 1, 1, 1, 1}}, {{6}}));
  std::set<Pair> pairs;
  for (const auto& part : enumerate_nef_partitions(dd, 2)) {
    auto h = compute_hodge(part);
    pairs.insert(pair_of(h));
    auto w = compute_hodge(dual_nef_partition(part));
    EXPECT_TRUE(mirror_check(h, w));
    EXPECT_EQ(h.chi, Integer(2) * (h.h11() - h.h21()));
    EXPECT_EQ(w.h[1][1], h.h[2][1]);
  }
  EXPECT_EQ(pairs, (std::set<Pair>{{1, 73}, {1, 89}, {1, 101}}));
}

TEST(Hodge, WeightedOneSixtyOne) {
  auto dd = dual(weighted({{1, 1, 2, 2, 3, 3}}, {{12}}));
  std::set<Pair> pairs;
  for (const auto& part : enumerate_nef_partitions(dd, 2)) pairs.insert(pair_of(compute_hodge(part)));
  EXPECT_TRUE(pairs.count({1, 61}));
}

TEST(Hodge, MirrorCheckDetectsCorruption) {
  auto dd = dual(weighted({{1, 1, 1, 1, 1, 1}}, {{6}}));
  auto part = enumerate_nef_partitions(dd, 2).front();
  auto h = compute_hodge(part);
  auto w = compute_hodge(dual_nef_partition(part));
  ASSERT_TRUE(mirror_check(h, w));
  auto bad = w;
  bad.e += LaurentBivariate::monomial(Integer(1), 1, 2);
  EXPECT_FALSE(mirror_check(h, bad));
}

TEST(Hodge, ExtractionErrors) {
  EXPECT_THROW(hodge_numbers(u() * u(), 1), ExponentOutOfRange);
  EXPECT_THROW(hodge_numbers(LaurentBivariate::monomial(Integer(1), -1, 0), 1), ExponentOutOfRange);
  EXPECT_THROW(hodge_numbers(LaurentBivariate(1) + u() - v() + u() * v(), 1), NegativeHodge);
  auto h = hodge_numbers(LaurentBivariate(1) - u() - v() + u() * v(), 1);
  EXPECT_EQ(h.chi, Integer(0));
}
