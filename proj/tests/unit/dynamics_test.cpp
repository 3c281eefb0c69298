#include <gtest/gtest.h>

#include <cmath>

#include "deffuant/dynamics.hpp"
#include "deffuant/errors.hpp"

using namespace deffuant;

namespace
{

Configuration line_config(std::initializer_list<double> values)
{
  std::vector<Opinion> opinions;
  for (double v : values) {
    opinions.push_back({v});
  }
  return Configuration::from_opinions(opinions);
}

const OpinionSpace unit_interval = OpinionSpace(ConvexSet::interval(0, 1), Norm::l2(1));

void expect_values(const Configuration& c, std::initializer_list<double> expected)
{
  ASSERT_EQ(c.vertex_count(), expected.size());
  Vertex v = 0;
  for (double e : expected) {
    EXPECT_NEAR(c.opinion(v)[0], e, 1e-15) << "vertex " << v;
    ++v;
  }
}

} // namespace

TEST(Step, Examples)
{
  const Graph g(2, {{0, 1}});
  expect_values(step(line_config({0.2, 0.6}), g, {0, 1}, 0.5, 0.5, Norm::l2(1)), {0.4, 0.4});
  expect_values(step(line_config({0.0, 1.0}), g, {0, 1}, 0.5, 0.5, Norm::l2(1)), {0.0, 1.0});

  const auto start = Configuration::from_opinions(std::vector<Opinion>{{0, 0}, {1, 1}});
  const auto next = step(start, g, {0, 1}, 2.0, 0.25, Norm::l1(2));
  EXPECT_EQ(next.opinion_copy(0), (Opinion{0.25, 0.25}));
  EXPECT_EQ(next.opinion_copy(1), (Opinion{0.75, 0.75}));
  EXPECT_EQ(next.event_count, start.event_count + 1);
}

TEST(Step, RejectsNonEdge)
{
  const Graph g(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(step(line_config({0, 0.1, 0.2}), g, {0, 2}, 0.5, 0.5, Norm::l2(1)), GraphError);
}

TEST(NextEvent, SingleEdge)
{
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(next_event(rng, 1).edge, 0u);
  }
}

TEST(NextEvent, ExponentialMeanAndUniformEdges)
{
  Rng rng(2);
  const std::size_t n = 100'000;
  const std::size_t edges = 10;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<std::size_t> counts(edges, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = next_event(rng, edges);
    sum += e.dt;
    sum_sq += e.dt * e.dt;
    ++counts[e.edge];
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, 0.1, 4 * se);

  double chi2 = 0.0;
  const double expected = static_cast<double>(n) / edges;
  for (auto c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  EXPECT_LT(chi2, 27.88); // chi-square 0.999 quantile, 9 degrees of freedom
}

TEST(DetectAbsorption, Examples)
{
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto single = detect_absorption(line_config({0.4, 0.4, 0.4}), k3, Norm::l2(1), 0.5, 0.01);
  ASSERT_TRUE(single);
  EXPECT_EQ(single->size(), 1u);

  // Two triangles joined by the edge (2, 3).
  const Graph bridged(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const auto two = detect_absorption(line_config({0, 0, 0, 0.9, 0.9, 0.9}), bridged, Norm::l2(1), 0.5, 0.01);
  ASSERT_TRUE(two);
  EXPECT_EQ(two->size(), 2u);
  EXPECT_EQ(two->classes[0], (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(two->label[4], 1u);

  const Graph pair(2, {{0, 1}});
  EXPECT_FALSE(detect_absorption(line_config({0.1, 0.4}), pair, Norm::l2(1), 0.5, 0.01));
}

TEST(PartitionIsStable, RejectsDriftingClasses)
{
  // Class {0,1} spans 0.45 while the cross edge (1,2) is 0.52: future moves may bring it within tau.
  const Graph g(3, {{0, 1}, {1, 2}});
  const auto c = line_config({0.0, 0.45, 0.97});
  Partition p{{{0, 1}, {2}}, {0, 0, 1}};
  EXPECT_FALSE(partition_is_stable(p, c, g, Norm::l2(1), 0.5));
  const auto far = line_config({0.0, 0.001, 0.9});
  EXPECT_TRUE(partition_is_stable(p, far, g, Norm::l2(1), 0.5));
}

TEST(Run, TwoVerticesClose)
{
  const Graph g(2, {{0, 1}});
  SimParams params;
  params.tau = 0.5;
  params.mu = 0.5;
  Rng rng(3);
  const auto out = run_from(g, unit_interval, line_config({0.3, 0.4}), params, rng);
  EXPECT_EQ(out.classification, Classification::Consensus);
  EXPECT_EQ(out.total_events, 1u);
  expect_values(out.final_configuration, {0.35, 0.35});
  ASSERT_TRUE(out.t_star);
  EXPECT_EQ(*out.t_star, 0.0);
}

TEST(Run, TwoVerticesFar)
{
  const Graph g(2, {{0, 1}});
  SimParams params;
  params.tau = 0.5;
  Rng rng(4);
  const auto out = run_from(g, unit_interval, line_config({0.0, 1.0}), params, rng);
  EXPECT_EQ(out.classification, Classification::Fragmented);
  EXPECT_EQ(out.class_count(), 2u);
  EXPECT_EQ(out.total_events, 0u);
  ASSERT_TRUE(out.t_star);
  EXPECT_EQ(*out.t_star, 0.0);
  EXPECT_FALSE(out.event_a);
}

TEST(Run, PointMassIsImmediateConsensus)
{
  const Graph g = generate(GraphSpec::cycle(7), 0).graph;
  SimParams params;
  Rng rng(5);
  const auto out = run(g, unit_interval, InitialDistribution::point_mass(unit_interval, {0.2}), params, rng);
  EXPECT_EQ(out.classification, Classification::Consensus);
  EXPECT_TRUE(out.event_a == (unit_interval.sup_distance(Opinion{0.2}) < params.tau));
}

TEST(Run, DeterministicPerSeed)
{
  const Graph g = generate(GraphSpec::torus(4, 4), 0).graph;
  const auto disc = OpinionSpace::of_ball({0, 0}, 1, Norm::l2(2));
  SimParams params;
  params.tau = 1.2;
  params.mu = 0.3;
  Rng a(9), b(9);
  const auto x = run(g, disc, InitialDistribution::uniform(disc), params, a);
  const auto y = run(g, disc, InitialDistribution::uniform(disc), params, b);
  EXPECT_EQ(x.final_configuration, y.final_configuration);
  EXPECT_EQ(x.total_events, y.total_events);
  EXPECT_EQ(x.t_star, y.t_star);
}

TEST(Run, EventBudgetGivesUndecided)
{
  const Graph g = generate(GraphSpec::path(10), 0).graph;
  SimParams params;
  params.tau = 0.8;
  params.max_events = 3;
  Rng rng(6);
  const auto out = run(g, unit_interval, InitialDistribution::uniform(unit_interval), params, rng);
  EXPECT_EQ(out.classification, Classification::Undecided);
  EXPECT_EQ(out.total_events, 3u);
  EXPECT_EQ(out.class_count(), 0u);
}

TEST(Run, RecordedTrajectoryMatchesDirectSums)
{
  const Graph g = generate(GraphSpec::complete(5), 0).graph;
  SimParams params;
  params.tau = 0.6;
  params.record_trajectories = true;
  params.probe_points = {{0.5}, {0.0}, {0.9}};
  Rng rng(7);
  const auto start = line_config({0.1, 0.3, 0.5, 0.7, 0.95});
  std::vector<Edge> fired;
  const auto out = run_from(g, unit_interval, start, params, rng,
                            [&](const Engine&, const Edge& e, const Engine::StepResult&) { fired.push_back(e); });
  ASSERT_TRUE(out.trajectory);
  const auto& tr = *out.trajectory;
  ASSERT_EQ(tr.events.size(), fired.size());
  const auto configs = replay(g, unit_interval, start, params, fired);
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      double direct = 0.0;
      for (Vertex v = 0; v < 5; ++v) {
        direct += std::abs(configs[i + 1].opinion(v)[0] - params.probe_points[k][0]);
      }
      EXPECT_NEAR(tr.row(i)[k], direct, 1e-12);
    }
  }
}

TEST(Replay, ScriptedSequence)
{
  const Graph g(3, {{0, 1}, {1, 2}});
  const std::vector<Edge> order{{0, 1}, {1, 2}, {0, 1}};
  SimParams params;
  params.mu = 0.5;

  // At tau = 0.5 the second event compares 0.2 with 0.8, which is beyond tau.
  params.tau = 0.5;
  auto configs = replay(g, unit_interval, line_config({0, 0.4, 0.8}), params, order);
  ASSERT_EQ(configs.size(), 4u);
  expect_values(configs[1], {0.2, 0.2, 0.8});
  expect_values(configs[2], {0.2, 0.2, 0.8});
  expect_values(configs[3], {0.2, 0.2, 0.8});

  params.tau = 0.7;
  configs = replay(g, unit_interval, line_config({0, 0.4, 0.8}), params, order);
  expect_values(configs[1], {0.2, 0.2, 0.8});
  expect_values(configs[2], {0.2, 0.5, 0.5});
  expect_values(configs[3], {0.35, 0.35, 0.5});
}

TEST(Replay, EdgeCases)
{
  const Graph g(2, {{0, 1}});
  SimParams params;
  params.tau = 0.5;
  const auto start = line_config({0, 1});
  EXPECT_EQ(replay(g, unit_interval, start, params, {}).size(), 1u);
  const auto once = replay(g, unit_interval, start, params, std::vector<Edge>{{0, 1}});
  ASSERT_EQ(once.size(), 2u);
  expect_values(once[1], {0, 1});
  const Graph path(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(replay(path, unit_interval, line_config({0, 0, 0}), params, std::vector<Edge>{{0, 2}}), GraphError);
}

TEST(Resolve, DefaultsAndValidation)
{
  const Graph g = generate(GraphSpec::complete(10), 0).graph;
  SimParams params;
  params.tau = 0.8;
  const auto r = resolve(params, g, unit_interval);
  EXPECT_DOUBLE_EQ(r.eps_stop, 0.8 / 40);
  EXPECT_EQ(r.max_events, 10'000u * 45u * 10u);

  params.mu = 0.7;
  EXPECT_THROW(resolve(params, g, unit_interval), ValidationError);
  params.mu = 0.5;
  params.tau = -1;
  EXPECT_THROW(resolve(params, g, unit_interval), ValidationError);
  params.tau = 0.8;
  params.eps_stop = 0.5;
  EXPECT_THROW(resolve(params, g, unit_interval), ValidationError);
  params.eps_stop.reset();
  params.probe_points = {{1.5}};
  EXPECT_THROW(resolve(params, g, unit_interval), ValidationError);
}
