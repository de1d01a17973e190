#include <gtest/gtest.h>

#include <random>

#include "cantorkit/interval.hpp"
#include "cantorkit/rational.hpp"

using cantorkit::Interval;
using cantorkit::IntervalUnion;
using cantorkit::Rational;

TEST(Rational, ParsesAndCanonicalises) {
  EXPECT_EQ(Rational::parse("2/4").str(), "1/2");
  EXPECT_EQ(Rational::parse("-6/3").str(), "-2");
  EXPECT_EQ(Rational::parse("7").str(), "7");
  EXPECT_THROW(Rational::parse("3/-9"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, FloorCeilOnNegatives) {
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(6, 3).floor(), 2);
  EXPECT_EQ(Rational(6, 3).ceil(), 2);
}

TEST(Rational, PowerWithNegativeExponent) {
  EXPECT_EQ(pow(Rational(5), -2), Rational(1, 25));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(pow(Rational(7), 0), Rational(1));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    Rational c(num(rng), den(rng));
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) {
      EXPECT_EQ(a / b * b, a);
    }
    EXPECT_EQ(Rational::parse(a.str()), a);
    EXPECT_LE(Rational(a.floor()), a);
    EXPECT_GE(Rational(a.ceil()), a);
  }
}

TEST(IntervalUnion, TouchingIntervalsMerge) {
  auto u = IntervalUnion::normalize({{Rational(0), Rational(1, 4)}, {Rational(1, 4), Rational(1, 2)}});
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0], Interval(Rational(0), Rational(1, 2)));
}

TEST(IntervalUnion, NormalizedInputUnchanged) {
  std::vector<Interval> raw{{Rational(0), Rational(1, 3)}, {Rational(2, 3), Rational(1)}};
  auto u = IntervalUnion::normalize(raw);
  EXPECT_EQ(u.intervals(), raw);
}

TEST(IntervalUnion, ContainmentAbsorbed) {
  auto u = IntervalUnion::normalize({{Rational(0), Rational(1)}, {Rational(1, 2), Rational(3, 4)}});
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0], Interval(Rational(0), Rational(1)));
}

TEST(IntervalUnion, MalformedIntervalRejected) {
  EXPECT_THROW(Interval(Rational(1), Rational(0)), std::invalid_argument);
}

TEST(IntervalUnion, IntersectAgreesWithPointMembership) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> p(0, 40);
  for (int trial = 0; trial < 100; ++trial) {
    auto random_union = [&] {
      std::vector<Interval> v;
      for (int i = 0; i < 5; ++i) {
        long a = p(rng), b = p(rng);
        v.push_back({Rational(std::min(a, b), 8), Rational(std::max(a, b), 8)});
      }
      return IntervalUnion::normalize(v);
    };
    auto u = random_union();
    auto w = random_union();
    auto x = u.intersect(w);
    for (long q = 0; q <= 80; ++q) {
      Rational pt(q, 16);
      EXPECT_EQ(x.contains(pt), u.contains(pt) && w.contains(pt)) << pt.str();
    }
  }
}
