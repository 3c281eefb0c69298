#ifndef DEFFUANT_ANALYSIS_HPP
#define DEFFUANT_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "deffuant/dynamics.hpp"
#include "deffuant/graph.hpp"
#include "deffuant/init.hpp"
#include "deffuant/opinion_space.hpp"

namespace deffuant
{

/**
 * Universal lower bound on the probability of consensus,
 *
 *     P(consensus) >= 1 - E||X - center|| / (tau - diameter/2),   tau > diameter/2.
 *
 * The value depends on the space, the initial law and tau only; no graph enters.
 */
struct BoundReport
{
  double tau = 0.0;
  double diameter = 0.0;
  Opinion center;
  double expected_disagreement = 0.0;
  double expected_std_error = 0.0; ///< 0 for closed-form moments
  bool expected_is_analytic = true;
  bool applicable = false;         ///< tau > diameter / 2
  std::optional<double> raw_bound; ///< absent when not applicable; may be negative
  double clamped_bound = 0.0;      ///< max(0, raw_bound), 0 when not applicable
};

/// expected_disagreement must be >= 0; throws ValidationError otherwise.
BoundReport consensus_lower_bound(double tau, const OpinionSpace& space, double expected_disagreement);
BoundReport consensus_lower_bound(double tau, const OpinionSpace& space, const MeanEstimate& estimate);

/// Bound for the uniform law on a ball of radius r in R^d: 1 - (dr/(d+1)) / (tau - r). Empty when tau <= r.
std::optional<double> example_uniform_bound(std::size_t d, double r, double tau);

/// Bound for the triangular law on a ball of radius r in R^d: 1 - (dr/(d+2)) / (tau - r). Empty when tau <= r.
std::optional<double> example_triangular_bound(std::size_t d, double r, double tau);

// ---------------------------------------------------------------------------

struct Interval
{
  double lo = 0.0;
  double hi = 1.0;

  double half_width() const noexcept { return 0.5 * (hi - lo); }
};

/// Two-sided standard normal quantile z_{1 - alpha/2}.
double normal_quantile(double alpha);

/// Wilson score interval for `successes` out of `trials` at level 1 - alpha; [0, 1] when trials == 0.
Interval wilson_interval(std::size_t successes, std::size_t trials, double alpha);

/// Per-replicate summary row.
struct RunRecord
{
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  Classification classification = Classification::Undecided;
  std::size_t n_classes = 0;
  std::uint64_t events = 0;
  double final_time = 0.0;
  std::optional<double> t_star;
  bool event_a = false;
};

/**
 * Monte Carlo summary of P(consensus).
 *
 * point_estimate and `wilson` use decided runs only; pessimistic_estimate and
 * `pessimistic_wilson` count Undecided runs as failures over all n_runs. The
 * two coincide when no run is Undecided.
 */
struct EstimateReport
{
  std::size_t n_runs = 0;
  std::size_t n_consensus = 0;
  std::size_t n_fragmented = 0;
  std::size_t n_undecided = 0;
  std::uint64_t master_seed = 0;
  double alpha = 0.05;
  double z = 0.0;

  double point_estimate = 0.0;
  Interval wilson;
  double pessimistic_estimate = 0.0;
  Interval pessimistic_wilson;

  std::size_t n_t_star = 0;      ///< runs in which T_* was reached
  double mean_t_star = 0.0;      ///< over those runs
  std::size_t n_event_a = 0;
  double event_a_frequency = 0.0; ///< n_event_a / n_runs
  std::size_t n_event_a_not_consensus = 0;

  std::vector<RunRecord> runs;
};

/// Runs n_runs independent replicates; replicate i uses Rng::stream(master_seed, i).
/// The result is independent of `workers` (0 selects the hardware concurrency).
std::vector<RunOutcome> run_replicates(const Graph& graph, const OpinionSpace& space,
                                       const InitialDistribution& dist, const SimParams& params,
                                       std::size_t n_runs, std::uint64_t master_seed, std::size_t workers);

EstimateReport summarize(std::span<const RunOutcome> outcomes, std::uint64_t master_seed, double alpha = 0.05);

EstimateReport estimate_consensus(const Graph& graph, const OpinionSpace& space, const InitialDistribution& dist,
                                  const SimParams& params, std::size_t n_runs, std::uint64_t master_seed,
                                  std::size_t workers, double alpha = 0.05);

} // namespace deffuant

#endif
