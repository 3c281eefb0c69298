#include "deffuant/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "deffuant/errors.hpp"

namespace deffuant
{

namespace
{

std::optional<double> ball_example_bound(std::size_t d, double r, double tau, double moment_denominator_shift)
{
  if (d == 0) {
    throw ValidationError("dimension must be positive");
  }
  if (!(r > 0.0)) {
    throw ValidationError("ball radius must be positive");
  }
  if (!(tau > r)) {
    return std::nullopt;
  }
  const double dd = static_cast<double>(d);
  const double moment = dd * r / (dd + moment_denominator_shift);
  return 1.0 - moment / (tau - r);
}

} // namespace

BoundReport consensus_lower_bound(double tau, const OpinionSpace& space, double expected_disagreement)
{
  if (!(expected_disagreement >= 0.0)) {
    throw ValidationError("expected disagreement must be non-negative");
  }
  BoundReport report;
  report.tau = tau;
  report.diameter = space.diameter();
  report.center = space.center();
  report.expected_disagreement = expected_disagreement;
  report.applicable = tau > space.diameter() / 2.0;
  if (report.applicable) {
    report.raw_bound = 1.0 - expected_disagreement / (tau - space.diameter() / 2.0);
    report.clamped_bound = std::max(0.0, *report.raw_bound);
  }
  return report;
}

BoundReport consensus_lower_bound(double tau, const OpinionSpace& space, const MeanEstimate& estimate)
{
  BoundReport report = consensus_lower_bound(tau, space, estimate.mean);
  report.expected_std_error = estimate.std_error;
  report.expected_is_analytic = false;
  return report;
}

std::optional<double> example_uniform_bound(std::size_t d, double r, double tau)
{
  return ball_example_bound(d, r, tau, 1.0);
}

std::optional<double> example_triangular_bound(std::size_t d, double r, double tau)
{
  return ball_example_bound(d, r, tau, 2.0);
}

// ---------------------------------------------------------------------------

double normal_quantile(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double alpha)
{
  if (successes > trials) {
    throw ValidationError("successes exceed trials");
  }
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double z = normal_quantile(alpha);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // The endpoints at p = 0 and p = 1 are exact; cancellation would leave ~1e-18 residue.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

std::vector<RunOutcome> run_replicates(const Graph& graph, const OpinionSpace& space,
                                       const InitialDistribution& dist, const SimParams& params,
                                       std::size_t n_runs, std::uint64_t master_seed, std::size_t workers)
{
  if (n_runs == 0) {
    throw ValidationError("number of runs must be positive");
  }
  resolve(params, graph, space);
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, n_runs);

  std::vector<RunOutcome> outcomes(n_runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_runs) {
        return;
      }
      try {
        Rng rng = Rng::stream(master_seed, i);
        outcomes[i] = run(graph, space, dist, params, rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(n_runs);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return outcomes;
}

EstimateReport summarize(std::span<const RunOutcome> outcomes, std::uint64_t master_seed, double alpha)
{
  EstimateReport report;
  report.n_runs = outcomes.size();
  report.master_seed = master_seed;
  report.alpha = alpha;
  report.z = normal_quantile(alpha);

  double t_star_sum = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const RunOutcome& o = outcomes[i];
    switch (o.classification) {
    case Classification::Consensus:
      ++report.n_consensus;
      break;
    case Classification::Fragmented:
      ++report.n_fragmented;
      break;
    case Classification::Undecided:
      ++report.n_undecided;
      break;
    }
    if (o.t_star) {
      ++report.n_t_star;
      t_star_sum += *o.t_star;
    }
    if (o.event_a) {
      ++report.n_event_a;
      if (o.classification != Classification::Consensus) {
        ++report.n_event_a_not_consensus;
      }
    }
    report.runs.push_back({i, Rng::stream_seed(master_seed, i), o.classification, o.class_count(), o.total_events,
                           o.final_time, o.t_star, o.event_a});
  }

  const std::size_t decided = report.n_consensus + report.n_fragmented;
  report.point_estimate = decided ? static_cast<double>(report.n_consensus) / static_cast<double>(decided) : 0.0;
  report.wilson = wilson_interval(report.n_consensus, decided, alpha);
  report.pessimistic_estimate =
    report.n_runs ? static_cast<double>(report.n_consensus) / static_cast<double>(report.n_runs) : 0.0;
  report.pessimistic_wilson = wilson_interval(report.n_consensus, report.n_runs, alpha);
  report.mean_t_star = report.n_t_star ? t_star_sum / static_cast<double>(report.n_t_star) : 0.0;
  report.event_a_frequency =
    report.n_runs ? static_cast<double>(report.n_event_a) / static_cast<double>(report.n_runs) : 0.0;
  return report;
}

EstimateReport estimate_consensus(const Graph& graph, const OpinionSpace& space, const InitialDistribution& dist,
                                  const SimParams& params, std::size_t n_runs, std::uint64_t master_seed,
                                  std::size_t workers, double alpha)
{
  const auto outcomes = run_replicates(graph, space, dist, params, n_runs, master_seed, workers);
  return summarize(outcomes, master_seed, alpha);
}

} // namespace deffuant
