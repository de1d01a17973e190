#include <gtest/gtest.h>

#include <random>

#include "cantorkit/highdim.hpp"
#include "oracles.hpp"

using namespace cantorkit;

namespace {

IFSdD four_corner() {
  const Rational r(1, 5), f(4, 5), z(0);
  return IFSdD(2, {{r, {z, z}}, {r, {f, z}}, {r, {z, f}}, {r, {f, f}}});
}

LinearMapD matrix(std::initializer_list<long> e) {
  std::vector<Rational> v;
  for (long x : e) v.emplace_back(x);
  std::size_t n = 1;
  while (n * n < v.size()) ++n;
  return LinearMapD(n, v);
}

}  // namespace

TEST(LinearMap, DeterminantAndInverse) {
  auto m = matrix({2, 1, 0, 1, 3, 1, 0, 1, 4});
  EXPECT_EQ(m.determinant(), Rational(18));
  auto inv = m.inverse();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      Rational s;
      for (std::size_t k = 0; k < 3; ++k) s += m(r, k) * inv(k, c);
      EXPECT_EQ(s, Rational(r == c ? 1 : 0));
    }
  EXPECT_THROW(matrix({1, 2, 2, 4}), std::invalid_argument);
}

TEST(LinearMap, RandomInversesRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> e;
    for (int i = 0; i < 9; ++i) e.push_back(oracle::random_rational(rng, 9, 4));
    LinearMapD m(3, e);
    if (m.determinant().is_zero()) continue;
    VectorD x{oracle::random_rational(rng, 9, 9), oracle::random_rational(rng, 9, 9), oracle::random_rational(rng, 9, 9)};
    EXPECT_EQ(m.inverse().apply(m.apply(x)), x);
  }
}

TEST(ProjectIfs, IdentityMergesCoincidentMaps) {
  auto p = project_ifs(four_corner(), LinearMapD::identity(2));
  ASSERT_EQ(p.maps.size(), 2u);
  EXPECT_EQ(p.maps[0], (ContractionMap{Rational(1, 5), Rational(0)}));
  EXPECT_EQ(p.maps[1], (ContractionMap{Rational(1, 5), Rational(4, 5)}));
  EXPECT_EQ(p.multiplicity, (std::vector<std::size_t>{2, 2}));
  ASSERT_TRUE(p.ifs);
  EXPECT_EQ(depth_cover(*p.ifs, 3), depth_cover(digit_presentation({5}, {{0, 4}}), 3));
}

TEST(ProjectIfs, ShearSpreadsTranslations) {
  auto p = project_ifs(four_corner(), matrix({1, 2, 0, 1}));
  std::vector<Rational> b;
  for (const auto& m : p.maps) b.push_back(m.b);
  std::sort(b.begin(), b.end());
  EXPECT_EQ(b, (std::vector<Rational>{0, Rational(4, 5), Rational(8, 5), Rational(12, 5)}));
}

TEST(ProjectIfs, DegenerateWhenFirstCoordinatesVanish) {
  const Rational r(1, 3), z(0);
  IFSdD flat(2, {{r, {z, z}}, {r, {z, Rational(2, 3)}}});
  auto p = project_ifs(flat, LinearMapD::identity(2));
  EXPECT_TRUE(p.degenerate);
  EXPECT_FALSE(p.ifs);
  EXPECT_THROW(projective_witness(flat, LinearMapD::identity(2), {z, z}, Rational(1, 3), 6), std::invalid_argument);
}

TEST(ProjectIfs, MatchesProjectedPlanarCells) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const Rational a = oracle::random_rational(rng, 4, 3);
    if (a.is_zero()) continue;
    const LinearMapD T(2, {a, oracle::random_rational(rng, 4, 3), Rational(0), Rational(1)});
    auto p = project_ifs(four_corner(), T);
    if (!p.ifs) continue;
    for (std::size_t k = 0; k <= 3; ++k)
      EXPECT_EQ(oracle::segs(depth_cover(*p.ifs, k)), oracle::projected_cells(four_corner(), T, k));
  }
}

TEST(Nondegenerate, Examples) {
  auto r = nondegenerate_check(four_corner());
  EXPECT_TRUE(r.nondegenerate);
  ASSERT_EQ(r.witness.size(), 3u);
  EXPECT_EQ(r.witness[0], (VectorD{0, 0}));
  EXPECT_EQ(r.witness[1], (VectorD{1, 0}));
  EXPECT_EQ(r.witness[2], (VectorD{0, 1}));
  const Rational q(1, 4), z(0);
  EXPECT_FALSE(nondegenerate_check(IFSdD(2, {{q, {z, z}}, {q, {Rational(1, 2), z}}, {q, {Rational(3, 4), z}}}))
                   .nondegenerate);
  EXPECT_FALSE(nondegenerate_check(IFSdD(2, {{q, {z, z}}, {q, {Rational(1, 2), Rational(1, 2)}}})).nondegenerate);
}

TEST(ProjectiveWitness, FourCornerIdentity) {
  auto w = projective_witness(four_corner(), LinearMapD::identity(2), {Rational(1, 2), Rational(0)}, Rational(1, 3), 12);
  EXPECT_EQ(w.tau_J.tau.str(), "1/3");
  EXPECT_EQ(w.base.N, 9);
  EXPECT_EQ(w.verdict.kind, VerdictKind::Certified);
  EXPECT_TRUE(w.valid());
}

TEST(ProjectiveWitness, FourCornerShear) {
  auto w = projective_witness(four_corner(), matrix({1, 2, 0, 1}), {Rational(0), Rational(0)}, Rational(1, 3), 10);
  EXPECT_TRUE(w.tau_J.exact);
  EXPECT_EQ(w.tau_J.tau.str(), "3");
  EXPECT_TRUE(w.valid());
}

TEST(ProjectiveThicknessProbe, EachSampleIndependent) {
  auto out = projective_thickness_probe(four_corner(), {LinearMapD::identity(2), matrix({1, 2, 0, 1})}, 3);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0]->tau.str(), "1/3");
  EXPECT_EQ(out[1]->tau.str(), "3");
}

TEST(HyperplaneHit, Examples) {
  auto diag = hyperplane_hit({{0, 0}, {1, 1}});
  EXPECT_EQ(diag.axis, 1u);
  EXPECT_EQ(diag.r, Rational(1, 2));
  EXPECT_EQ(diag.point, (VectorD{Rational(1, 2), Rational(1, 2)}));
  auto vert = hyperplane_hit({{0, 0}, {0, 1}});
  EXPECT_EQ(vert.axis, 2u);
  EXPECT_EQ(vert.point, (VectorD{0, Rational(1, 2)}));
  auto poly = hyperplane_hit({{0, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(poly.axis, 1u);
  EXPECT_EQ(poly.point, (VectorD{Rational(1, 2), 0}));
  EXPECT_THROW(hyperplane_hit({{0, 0}}), std::invalid_argument);
}

TEST(HyperplaneHit, PointLiesOnPathAndPlane) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    PolylinePath path;
    for (int v = 0; v < 4; ++v)
      path.push_back({oracle::random_rational(rng, 5, 3), oracle::random_rational(rng, 5, 3),
                      oracle::random_rational(rng, 5, 3)});
    bool repeat = false;
    for (std::size_t i = 1; i < path.size(); ++i) repeat = repeat || path[i] == path[i - 1];
    if (repeat) continue;
    auto h = hyperplane_hit(path);
    EXPECT_EQ(h.point[h.axis - 1], h.r);
    const auto& a = path[h.segment];
    const auto& b = path[h.segment + 1];
    // h.point = a + s(b − a) for one s ∈ [0,1]
    std::optional<Rational> s;
    for (std::size_t c = 0; c < 3; ++c) {
      if (a[c] == b[c]) {
        EXPECT_EQ(h.point[c], a[c]);
        continue;
      }
      Rational sc = (h.point[c] - a[c]) / (b[c] - a[c]);
      if (s) {
        EXPECT_EQ(*s, sc);
      }
      s = sc;
    }
    ASSERT_TRUE(s);
    EXPECT_GE(*s, Rational(0));
    EXPECT_LE(*s, Rational(1));
  }
}
