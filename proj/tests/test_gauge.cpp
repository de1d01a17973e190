#include <gtest/gtest.h>

#include <random>

#include "cantorkit/gauge.hpp"

using namespace cantorkit;

namespace {

GaugeFn plateau() {
  return GaugeFn({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, {1, 1}});
}

}  // namespace

TEST(Gauge, RejectsMalformedBreakpoints) {
  EXPECT_THROW(GaugeFn({{0, 0}}), std::invalid_argument);
  EXPECT_THROW(GaugeFn({{0, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(GaugeFn({{0, 0}, {Rational(1, 2), 1}, {Rational(1, 2), 2}}), std::invalid_argument);
  EXPECT_THROW(GaugeFn({{0, 0}, {Rational(1, 2), 1}, {1, Rational(1, 2)}}), std::invalid_argument);
  EXPECT_THROW(GaugeFn({{0, 0}, {2, 1}}), std::invalid_argument);
  EXPECT_THROW(plateau()(Rational(2)), std::domain_error);
}

TEST(PseudoInverse, Examples) {
  EXPECT_EQ(pseudo_inverse_W(GaugeFn::identity(), Rational(1, 4)), Rational(1, 4));
  EXPECT_EQ(pseudo_inverse_W(plateau(), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(pseudo_inverse_W(GaugeFn({{0, 0}, {Rational(1, 2), 1}}), Rational(1, 2)), Rational(1, 4));
  EXPECT_THROW(pseudo_inverse_W(plateau(), Rational(2)), std::domain_error);
  EXPECT_THROW(pseudo_inverse_W(plateau(), Rational(-1)), std::domain_error);
}

TEST(PseudoInverse, IsSupremumOfSublevelSet) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Breakpoint> pts{{0, 0}};
    Rational x, y;
    for (int i = 0; i < 5; ++i) {
      x += Rational(static_cast<long>(1 + rng() % 4), 25);
      y += Rational(static_cast<long>(rng() % 3), 7);
      pts.push_back({x, y});
    }
    if (y.is_zero()) continue;
    GaugeFn h(pts);
    for (int i = 0; i < 10; ++i) {
      Rational s = y * Rational(static_cast<long>(rng() % 11), 10);
      Rational W = pseudo_inverse_W(h, s);
      EXPECT_EQ(h(W), s);
      // any point beyond W has h > s
      for (const auto& p : pts) {
        if (p.x > W) {
          EXPECT_GT(p.y, s);
        }
      }
      if (W < h.domain_end()) {
        EXPECT_GT(h(W + (h.domain_end() - W) / Rational(1000)), s);
      }
    }
  }
}

TEST(CoverSum, Examples) {
  EXPECT_EQ(gdelta_cover_sum(GaugeFn::identity(), 3, 10).sum, Rational(1023, 8192));
  EXPECT_EQ(gdelta_cover_sum(GaugeFn::identity(), 1, 1).sum, Rational(1, 4));
  EXPECT_EQ(gdelta_cover_sum(plateau(), 2, 5).sum, Rational(31, 128));
  EXPECT_THROW(gdelta_cover_sum(plateau(), 0, 5), std::invalid_argument);
  EXPECT_THROW(gdelta_cover_sum(GaugeFn({{0, 0}, {1, Rational(1, 8)}}), 1, 5), std::domain_error);
}

TEST(CoverSum, DimensionOnlyChangesCubeSide) {
  auto one = gdelta_cover_sum(plateau(), 2, 8, 1);
  auto three = gdelta_cover_sum(plateau(), 2, 8, 3);
  EXPECT_EQ(one.sum, three.sum);
  EXPECT_EQ(three.dimension, 3u);
}

TEST(ScaledGauge, Examples) {
  auto h3 = scaled_gauge(GaugeFn::identity(), 3);
  EXPECT_EQ(h3.domain_end(), Rational(1, 3));
  EXPECT_EQ(h3(Rational(1, 5)), Rational(3, 5));
  EXPECT_EQ(scaled_gauge(GaugeFn::identity(), 1), GaugeFn::identity());
  auto p2 = scaled_gauge(plateau(), 2);
  EXPECT_EQ(p2(Rational(1, 8)), Rational(1, 2));
  EXPECT_EQ(p2(Rational(1, 4)), Rational(1, 2));
  EXPECT_GT(p2(Rational(1, 4) + Rational(1, 100)), Rational(1, 2));
  EXPECT_LT(p2(Rational(1, 8) - Rational(1, 100)), Rational(1, 2));
  EXPECT_THROW(scaled_gauge(plateau(), 0), std::invalid_argument);
}

TEST(ScaledGauge, AgreesWithComposition) {
  for (auto c : {Rational(1, 2), Rational(2), Rational(5, 3)}) {
    auto hc = scaled_gauge(plateau(), c);
    for (long i = 0; i <= 40; ++i) {
      Rational x = hc.domain_end() * Rational(i, 40);
      EXPECT_EQ(hc(x), plateau()(x * c));
    }
  }
}

TEST(CoverTransport, HalvingMapEquality) {
  // depth-2 middle-third cover has four intervals of length 1/9; their images under x/2 have length 1/18
  std::vector<Rational> dia(4, Rational(1, 18));
  auto rep = cover_transport_check(dia, AffineMap1D(0, Rational(1, 2)), GaugeFn::identity(), 2);
  EXPECT_EQ(rep.sum_h_c, Rational(4, 9));
  EXPECT_EQ(rep.sum_h_pulled, Rational(4, 9));
  EXPECT_TRUE(rep.equality());
  auto loose = cover_transport_check(dia, AffineMap1D(0, Rational(1, 2)), GaugeFn::identity(), 3);
  EXPECT_TRUE(loose.holds());
  EXPECT_FALSE(loose.equality());
  EXPECT_THROW(cover_transport_check(dia, AffineMap1D(0, Rational(1, 2)), GaugeFn::identity(), Rational(3, 2)),
               std::invalid_argument);
}

TEST(CoverTransport, IdentityPlanarMapEquality) {
  std::vector<Rational> dia{Rational(1, 3), Rational(1, 7), Rational(1, 2)};
  auto rep = cover_transport_check(dia, LinearMapD::identity(2), plateau(), 1);
  EXPECT_TRUE(rep.equality());
  EXPECT_EQ(rep.norm_bound, Rational(1));
}

TEST(CoverTransport, PlanarNormBoundCertified) {
  // inverse of diag(1/2, 1/4) is diag(2, 4): ‖M‖₁‖M‖∞ = 16, so c = 4 is certified and c = 3 is not
  LinearMapD T(2, {Rational(1, 2), 0, 0, Rational(1, 4)});
  std::vector<Rational> dia{Rational(1, 8), Rational(1, 16)};
  auto rep = cover_transport_check(dia, T, GaugeFn::identity(), 4);
  EXPECT_LE(rep.norm_bound, Rational(4));
  EXPECT_TRUE(rep.holds());
  for (const auto& t : rep.terms) EXPECT_TRUE(t.holds);
  EXPECT_THROW(cover_transport_check(dia, T, GaugeFn::identity(), 3), std::invalid_argument);
}
