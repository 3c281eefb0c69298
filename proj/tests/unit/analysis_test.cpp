#include <gtest/gtest.h>

#include <cmath>

#include "deffuant/analysis.hpp"
#include "deffuant/errors.hpp"

using namespace deffuant;

namespace
{

// Wilson score interval written out from its definition.
std::pair<double, double> wilson_oracle(double k, double n, double z)
{
  const double p = k / n;
  const double denom = 1 + z * z / n;
  const double mid = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {mid - half, mid + half};
}

const OpinionSpace unit_interval = OpinionSpace(ConvexSet::interval(0, 1), Norm::l2(1));

} // namespace

TEST(ConsensusBound, Examples)
{
  const auto b = consensus_lower_bound(0.8, unit_interval, 0.25);
  EXPECT_TRUE(b.applicable);
  EXPECT_NEAR(*b.raw_bound, 1 - 0.25 / 0.3, 1e-15);
  EXPECT_NEAR(b.clamped_bound, 0.1667, 1e-4);

  EXPECT_DOUBLE_EQ(consensus_lower_bound(0.8, unit_interval, 0.0).clamped_bound, 1.0);

  const auto edge = consensus_lower_bound(0.5, unit_interval, 0.25);
  EXPECT_FALSE(edge.applicable);
  EXPECT_FALSE(edge.raw_bound);
  EXPECT_EQ(edge.clamped_bound, 0.0);

  const auto negative = consensus_lower_bound(0.6, unit_interval, 0.25);
  EXPECT_NEAR(*negative.raw_bound, -1.5, 1e-12);
  EXPECT_EQ(negative.clamped_bound, 0.0);

  EXPECT_THROW(consensus_lower_bound(0.8, unit_interval, -0.1), ValidationError);
}

TEST(ExampleBounds, Values)
{
  EXPECT_NEAR(*example_uniform_bound(1, 0.5, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(*example_uniform_bound(2, 1.0, 3.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(*example_triangular_bound(1, 0.5, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(*example_triangular_bound(2, 1.0, 3.0), 0.75, 1e-15);
  EXPECT_NEAR(*example_triangular_bound(2, 1.0, 2.5), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(example_uniform_bound(1, 0.5, 0.5));
  EXPECT_NEAR(*example_uniform_bound(3, 1e-9, 1.0), 1.0, 1e-8);
}

TEST(ExampleBounds, AgreeWithGeneralFormula)
{
  for (std::size_t d : {1, 2, 3, 5}) {
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
      for (double factor : {1.01, 1.5, 2.0, 4.0}) {
        const double tau = factor * r;
        const auto space = OpinionSpace::of_ball(Opinion(d, 0.0), r, Norm::l2(d));
        const auto u = consensus_lower_bound(tau, space, expected_disagreement_analytic(InitialDistribution::uniform(space)));
        const auto t = consensus_lower_bound(tau, space, expected_disagreement_analytic(InitialDistribution::triangular(space)));
        EXPECT_NEAR(*example_uniform_bound(d, r, tau), *u.raw_bound, 1e-12 * std::max(1.0, std::abs(*u.raw_bound)));
        EXPECT_NEAR(*example_triangular_bound(d, r, tau), *t.raw_bound, 1e-12 * std::max(1.0, std::abs(*t.raw_bound)));
      }
    }
  }
}

TEST(Wilson, Examples)
{
  EXPECT_NEAR(normal_quantile(0.05), 1.959964, 1e-6);
  EXPECT_NEAR(normal_quantile(0.01), 2.575829, 1e-6);

  const auto all = wilson_interval(100, 100, 0.05);
  EXPECT_NEAR(all.lo, 0.9630, 1e-4);
  EXPECT_NEAR(all.lo, wilson_oracle(100, 100, normal_quantile(0.05)).first, 1e-12);
  EXPECT_DOUBLE_EQ(all.hi, 1.0);

  const auto none = wilson_interval(0, 100, 0.05);
  EXPECT_DOUBLE_EQ(none.lo, 0.0);

  const auto empty = wilson_interval(0, 0, 0.05);
  EXPECT_EQ(empty.lo, 0.0);
  EXPECT_EQ(empty.hi, 1.0);
}

TEST(Wilson, MatchesOracleAndContainsPoint)
{
  for (std::size_t n : {1, 7, 50, 1000}) {
    for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 9)) {
      const auto w = wilson_interval(k, n, 0.01);
      const auto [lo, hi] = wilson_oracle(k, n, normal_quantile(0.01));
      EXPECT_NEAR(w.lo, std::max(0.0, lo), 1e-12);
      EXPECT_NEAR(w.hi, std::min(1.0, hi), 1e-12);
      const double p = static_cast<double>(k) / n;
      EXPECT_LE(w.lo, p + 1e-15);
      EXPECT_GE(w.hi, p - 1e-15);
    }
  }
}

TEST(Summarize, CountsAndEstimates)
{
  std::vector<RunOutcome> outcomes(10);
  for (std::size_t i = 0; i < 10; ++i) {
    outcomes[i].classification = i < 6 ? Classification::Consensus : (i < 8 ? Classification::Fragmented : Classification::Undecided);
    outcomes[i].total_events = i;
  }
  outcomes[0].t_star = 2.0;
  outcomes[1].t_star = 4.0;
  outcomes[0].event_a = true;
  const auto r = summarize(outcomes, 42, 0.05);
  EXPECT_EQ(r.n_consensus, 6u);
  EXPECT_EQ(r.n_fragmented, 2u);
  EXPECT_EQ(r.n_undecided, 2u);
  EXPECT_DOUBLE_EQ(r.point_estimate, 6.0 / 8.0);
  EXPECT_DOUBLE_EQ(r.pessimistic_estimate, 6.0 / 10.0);
  EXPECT_EQ(r.n_t_star, 2u);
  EXPECT_DOUBLE_EQ(r.mean_t_star, 3.0);
  EXPECT_EQ(r.n_event_a, 1u);
  EXPECT_DOUBLE_EQ(r.event_a_frequency, 0.1);
  EXPECT_EQ(r.runs.size(), 10u);
  EXPECT_EQ(r.runs[3].seed, Rng::stream_seed(42, 3));
}

TEST(Estimate, DeterministicAndWorkerIndependent)
{
  const Graph g = generate(GraphSpec::complete(10), 0).graph;
  const auto dist = InitialDistribution::uniform(unit_interval);
  SimParams params;
  params.tau = 0.8;
  const auto a = estimate_consensus(g, unit_interval, dist, params, 60, 42, 1);
  const auto b = estimate_consensus(g, unit_interval, dist, params, 60, 42, 3);
  ASSERT_EQ(a.runs.size(), b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].events, b.runs[i].events);
    EXPECT_EQ(a.runs[i].final_time, b.runs[i].final_time);
    EXPECT_EQ(a.runs[i].classification, b.runs[i].classification);
  }
  EXPECT_EQ(a.n_consensus, b.n_consensus);
  EXPECT_THROW(estimate_consensus(g, unit_interval, dist, params, 0, 42, 1), ValidationError);
}

TEST(Estimate, PointMassTwoVerticesAlwaysConsensus)
{
  const Graph g(2, {{0, 1}});
  SimParams params;
  params.tau = 0.3;
  const auto r = estimate_consensus(g, unit_interval, InitialDistribution::point_mass(unit_interval, {0.4}), params, 50, 1, 1);
  EXPECT_EQ(r.n_consensus, 50u);
  EXPECT_DOUBLE_EQ(r.pessimistic_estimate, 1.0);
}
