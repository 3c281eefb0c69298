#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "deffuant/errors.hpp"
#include "deffuant/opinion_space.hpp"
#include "deffuant/rng.hpp"

using namespace deffuant;

namespace
{

// Corners of [lower, upper]^d.
std::vector<Opinion> corners(const Opinion& lower, const Opinion& upper)
{
  const std::size_t d = lower.size();
  std::vector<Opinion> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Opinion p(d);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = (mask >> i & 1) ? upper[i] : lower[i];
    }
    out.push_back(p);
  }
  return out;
}

} // namespace

TEST(Distance, Examples)
{
  EXPECT_DOUBLE_EQ(distance(Opinion{0.2}, Opinion{0.6}, Norm::l2(1)), 0.4);
  EXPECT_DOUBLE_EQ(distance(Opinion{0, 0}, Opinion{1, 1}, Norm::l1(2)), 2.0);
  EXPECT_DOUBLE_EQ(distance(Opinion{0, 0}, Opinion{1, 1}, Norm::linf(2)), 1.0);
  EXPECT_DOUBLE_EQ(distance(Opinion{0, 0}, Opinion{3, 4}, Norm::l2(2)), 5.0);
  EXPECT_NEAR(distance(Opinion{0, 0}, Opinion{1, 1}, Norm::lp(2, 3)), std::cbrt(2.0), 1e-15);
}

TEST(Distance, DimensionMismatchThrows)
{
  EXPECT_THROW(distance(Opinion{0, 0}, Opinion{1}, Norm::l2(2)), DimensionError);
  EXPECT_THROW(distance(Opinion{0}, Opinion{1}, Norm::l2(2)), DimensionError);
}

TEST(Norm, LpNormalizesNamedExponents)
{
  EXPECT_EQ(Norm::lp(3, 1), Norm::l1(3));
  EXPECT_EQ(Norm::lp(3, 2), Norm::l2(3));
  EXPECT_EQ(Norm::lp(3, std::numeric_limits<double>::infinity()), Norm::linf(3));
  EXPECT_THROW(Norm::lp(2, 0.5), ValidationError);
}

TEST(Norm, Axioms)
{
  Rng rng(7);
  for (const Norm& norm : {Norm::l1(3), Norm::l2(3), Norm::linf(3), Norm::lp(3, 3.5)}) {
    for (int t = 0; t < 1000; ++t) {
      Opinion a(3), b(3);
      for (int i = 0; i < 3; ++i) {
        a[i] = rng.uniform(-2, 2);
        b[i] = rng.uniform(-2, 2);
      }
      Opinion sum(3), scaled(3);
      const double k = rng.uniform(-3, 3);
      for (int i = 0; i < 3; ++i) {
        sum[i] = a[i] + b[i];
        scaled[i] = k * a[i];
      }
      EXPECT_LE(norm(sum), norm(a) + norm(b) + 1e-12);
      EXPECT_NEAR(norm(scaled), std::abs(k) * norm(a), 1e-12);
      EXPECT_GE(norm(a), 0.0);
    }
  }
}

TEST(Diameter, BallIsTwiceRadiusUnderDefiningNorm)
{
  for (const Norm& norm : {Norm::l1(2), Norm::l2(2), Norm::linf(2)}) {
    EXPECT_DOUBLE_EQ(diameter(ConvexSet::ball({0, 0}, 0.5, norm), norm), 1.0);
  }
  EXPECT_THROW(diameter(ConvexSet::ball({0, 0}, 0.5, Norm::l2(2)), Norm::l1(2)), UnsupportedError);
}

TEST(Diameter, BoxMatchesCornerEnumeration)
{
  const Opinion lo{0, 0}, hi{1, 1};
  for (const Norm& norm : {Norm::l1(2), Norm::l2(2), Norm::linf(2)}) {
    double brute = 0.0;
    for (const auto& p : corners(lo, hi)) {
      for (const auto& q : corners(lo, hi)) {
        brute = std::max(brute, distance(p, q, norm));
      }
    }
    EXPECT_DOUBLE_EQ(diameter(ConvexSet::box(lo, hi), norm), brute);
  }
  EXPECT_DOUBLE_EQ(diameter(ConvexSet::box(lo, hi), Norm::l1(2)), 2.0);
  EXPECT_DOUBLE_EQ(diameter(ConvexSet::box({0.3, 0.3}, {0.3, 0.3}), Norm::l2(2)), 0.0);
}

TEST(Center, Examples)
{
  EXPECT_EQ(center(ConvexSet::ball({1, 2}, 0.7, Norm::l2(2))), (Opinion{1, 2}));
  EXPECT_EQ(center(ConvexSet::interval(0, 1)), (Opinion{0.5}));
  EXPECT_EQ(center(ConvexSet::box({-1, -1, -1}, {1, 1, 1})), (Opinion{0, 0, 0}));
}

TEST(SupDistance, Examples)
{
  EXPECT_DOUBLE_EQ(sup_distance_to_set(Opinion{0, 0}, ConvexSet::ball({0, 0}, 1, Norm::l2(2)), Norm::l2(2)), 1.0);
  EXPECT_DOUBLE_EQ(sup_distance_to_set(Opinion{0.3}, ConvexSet::interval(0, 1), Norm::l2(1)), 0.7);

  const Opinion a{0.25, 0.5};
  double brute = 0.0;
  for (const auto& corner : corners({0, 0}, {1, 1})) {
    brute = std::max(brute, distance(a, corner, Norm::l2(2)));
  }
  EXPECT_NEAR(brute, 0.9014, 1e-4);
  EXPECT_DOUBLE_EQ(sup_distance_to_set(a, ConvexSet::box({0, 0}, {1, 1}), Norm::l2(2)), brute);
}

TEST(SupDistance, BoxAgreesWithCornersInThreeDimensions)
{
  Rng rng(11);
  const Opinion lo{-1, 0, 2}, hi{1, 0.5, 5};
  for (const Norm& norm : {Norm::l1(3), Norm::l2(3), Norm::linf(3), Norm::lp(3, 1.5)}) {
    for (int t = 0; t < 200; ++t) {
      Opinion a{rng.uniform(-1, 1), rng.uniform(0, 0.5), rng.uniform(2, 5)};
      double brute = 0.0;
      for (const auto& corner : corners(lo, hi)) {
        brute = std::max(brute, distance(a, corner, norm));
      }
      EXPECT_NEAR(sup_distance_to_set(a, ConvexSet::box(lo, hi), norm), brute, 1e-12);
    }
  }
}

TEST(Interpolate, Examples)
{
  EXPECT_EQ(interpolate(Opinion{0}, Opinion{1}, 0.5), (Opinion{0.5}));
  EXPECT_EQ(interpolate(Opinion{0, 0}, Opinion{1, 1}, 0.25), (Opinion{0.25, 0.25}));
  EXPECT_EQ(interpolate(Opinion{0.3, -2}, Opinion{0.3, -2}, 0.17), (Opinion{0.3, -2}));
}

TEST(Interpolate, RejectsMuOutsideRange)
{
  EXPECT_THROW(interpolate(Opinion{0}, Opinion{1}, 0.0), ValidationError);
  EXPECT_THROW(interpolate(Opinion{0}, Opinion{1}, 0.7), ValidationError);
  EXPECT_THROW(interpolate(Opinion{0}, Opinion{1}, -0.1), ValidationError);
  EXPECT_THROW(interpolate(Opinion{0}, Opinion{1, 2}, 0.5), DimensionError);
}

TEST(OpinionSpace, Accessors)
{
  const auto space = OpinionSpace::of_ball({0.5}, 0.5, Norm::l2(1));
  EXPECT_DOUBLE_EQ(space.diameter(), 1.0);
  EXPECT_EQ(space.center(), (Opinion{0.5}));
  EXPECT_TRUE(space.contains(Opinion{1.0}));
  EXPECT_FALSE(space.contains(Opinion{1.01}));
  EXPECT_DOUBLE_EQ(space.sup_distance(Opinion{0.5}), 0.5);
}

TEST(SampledDiameter, IsLabelledEstimateBelowTruth)
{
  Rng rng(3);
  std::vector<Opinion> points;
  for (int i = 0; i < 200; ++i) {
    points.push_back({rng.uniform01(), rng.uniform01()});
  }
  const auto estimate = sampled_diameter(points, Norm::l2(2));
  EXPECT_EQ(estimate.samples, 200u);
  EXPECT_LE(estimate.value, std::sqrt(2.0));
  EXPECT_GT(estimate.value, 1.0);
}
