#include <gtest/gtest.h>

#include "deffuant/analysis.hpp"
#include "deffuant/lemma_checks.hpp"

using namespace deffuant;

TEST(LemmaChecks, GeometryHolds)
{
  for (const auto& check : check_geometry(20'000, 1)) {
    EXPECT_TRUE(check.passed()) << check.name << ": " << check.counterexample;
    EXPECT_EQ(check.trials, 20'000u);
  }
}

TEST(LemmaChecks, TracesHold)
{
  const auto scenarios = default_trace_scenarios(24);
  for (const auto& check : check_traces(scenarios, 5, 2)) {
    EXPECT_EQ(check.violations, 0u) << check.name << ": " << check.counterexample;
  }
}

TEST(LemmaChecks, OutcomesAndConvergence)
{
  const OpinionSpace space(ConvexSet::interval(0, 1), Norm::l2(1));
  const Graph g = generate(GraphSpec::path(10), 0).graph;
  SimParams params;
  params.tau = 0.4;
  const auto outcomes = run_replicates(g, space, InitialDistribution::uniform(space), params, 100, 3, 1);
  for (const auto& check : check_outcomes(outcomes, g, space, params)) {
    EXPECT_EQ(check.violations, 0u) << check.name << ": " << check.counterexample;
  }
  const auto conv = check_convergence(outcomes, g, space, params, 2000, 4);
  EXPECT_TRUE(conv.passed()) << conv.counterexample;
}

TEST(LemmaChecks, ConservationOnCompleteGraph)
{
  const Graph g = generate(GraphSpec::complete(20), 0).graph;
  const OpinionSpace square(ConvexSet::box({0, 0}, {1, 1}), Norm::l2(2));
  const auto check = check_conservation(g, InitialDistribution::uniform(square), 0.3, 0.5, 100'000, 5);
  EXPECT_TRUE(check.passed()) << check.counterexample;
}

TEST(LemmaChecks, DetectsBrokenPartition)
{
  // A hand-made outcome whose partition leaves an edge inside [eps_stop, tau] must be flagged.
  const OpinionSpace space(ConvexSet::interval(0, 1), Norm::l2(1));
  const Graph g(2, {{0, 1}});
  SimParams params;
  params.tau = 0.5;
  RunOutcome bad;
  bad.classification = Classification::Fragmented;
  bad.final_configuration = Configuration::from_opinions(std::vector<Opinion>{{0.1}, {0.4}});
  bad.partition = Partition{{{0}, {1}}, {0, 1}};
  const auto checks = check_outcomes(std::vector<RunOutcome>{bad}, g, space, params);
  bool flagged = false;
  for (const auto& c : checks) {
    flagged = flagged || (c.name == "absorption_separation" && c.violations == 1);
  }
  EXPECT_TRUE(flagged);
}
