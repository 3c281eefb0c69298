#ifndef DEFFUANT_LEMMA_CHECKS_HPP
#define DEFFUANT_LEMMA_CHECKS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "deffuant/dynamics.hpp"
#include "deffuant/graph.hpp"
#include "deffuant/init.hpp"

namespace deffuant
{

/// Outcome of one executable property over many trials.
struct PropertyCheck
{
  std::string name;
  std::string claim;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  /// Smallest slack observed (rhs - lhs for an inequality lhs <= rhs); negative means violated.
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string counterexample; ///< first violating input, empty when none

  bool passed() const noexcept { return trials > 0 && violations == 0; }
};

struct LemmaReport
{
  std::vector<PropertyCheck> checks;

  bool all_passed() const;
  const PropertyCheck& find(const std::string& name) const;
};

/**
 * Random-geometry checks of the averaging map phi over norms {l1, l2, linf}
 * and dimensions {1, 2, 3}, with a, b in [-1, 1]^d, c in [-3, 3]^d and mu in (0, 1/2]:
 *   triangle_inequality_1  ||phi(a,b)-c|| + ||phi(b,a)-c|| <= ||a-c|| + ||b-c||
 *   triangle_inequality_2  ... <= ||a-c|| + ||b-c|| - 2||phi(a,b)-a|| + ||a+b-2c||
 *   collinear_order        a, phi(a,b), (a+b)/2, phi(b,a), b lie in this order on a segment
 */
std::vector<PropertyCheck> check_geometry(std::size_t trials, std::uint64_t seed, double slack = 1e-12);

/// One simulated scenario of the trace-based checks.
struct TraceScenario
{
  GraphSpec graph;
  InitialDistribution dist;
  SimParams params;
};

/// A mixed set of graphs, spaces, norms, initial laws and parameters, cycled to `count` entries.
std::vector<TraceScenario> default_trace_scenarios(std::size_t count);

/// Scenarios whose runs are long (>= 10^4 events) so jump sizes can be compared early versus late.
std::vector<TraceScenario> long_trace_scenarios(std::size_t count);

/**
 * Simulates every scenario with `probes` reference points in the space (the
 * center plus uniform draws) and checks, per trace:
 *   monotonicity      X_t^c nonincreasing (tolerance 1e-9 per event), 0 <= X_t^c <= D N
 *   membership        every updated opinion stays in the space (slack 1e-12)
 *   conservation      coordinate sums unchanged (tolerance 1e-9)
 *   absorption_separation, absorbed_state_fixed, t_star_reached, inclusion_a_in_c  (see check_outcomes)
 */
std::vector<PropertyCheck> check_traces(std::span<const TraceScenario> scenarios, std::size_t probes,
                                        std::uint64_t seed);

/// Early versus late jump sizes over runs with at least `min_events` events.
PropertyCheck check_shrinking_jumps(std::span<const TraceScenario> scenarios, std::uint64_t seed,
                                    std::uint64_t min_events = 10'000);

/**
 * Checks on finished runs of one (graph, space, params):
 *   absorption_separation     absorbed runs: no edge in [eps_stop, tau]; cross-class edges > tau
 *   t_star_reached    every Consensus run reached T_*
 *   inclusion_a_in_c  every run with event A at T_* is Consensus
 */
std::vector<PropertyCheck> check_outcomes(std::span<const RunOutcome> outcomes, const Graph& graph,
                                          const OpinionSpace& space, const SimParams& params);

/// After absorption, keeps firing edges and checks the partition and the positions stay put.
PropertyCheck check_convergence(std::span<const RunOutcome> outcomes, const Graph& graph,
                                const OpinionSpace& space, const SimParams& params, std::uint64_t extra_events,
                                std::uint64_t seed);

/// Coordinate-sum drift after `events` events from a random start (tolerance 1e-9).
PropertyCheck check_conservation(const Graph& graph, const InitialDistribution& dist, double tau, double mu,
                                 std::uint64_t events, std::uint64_t seed, double tolerance = 1e-9);

struct LemmaCheckConfig
{
  std::uint64_t seed = 20240601;
  std::size_t geometry_trials = 100'000;
  std::size_t traces = 100;
  std::size_t probes = 10;
  std::size_t long_traces = 8;
  std::uint64_t conservation_events = 1'000'000;
};

/// Runs every check above.
LemmaReport lemma_check_report(const LemmaCheckConfig& config);

} // namespace deffuant

#endif
