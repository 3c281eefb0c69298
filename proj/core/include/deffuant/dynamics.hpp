#ifndef DEFFUANT_DYNAMICS_HPP
#define DEFFUANT_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deffuant/configuration.hpp"
#include "deffuant/graph.hpp"
#include "deffuant/init.hpp"
#include "deffuant/opinion_space.hpp"
#include "deffuant/rng.hpp"

namespace deffuant
{

struct SimParams
{
  double tau = 0.5;                        ///< confidence threshold, > 0
  double mu = 0.5;                         ///< convergence parameter, in (0, 1/2]
  std::optional<double> eps_stop;          ///< absorption resolution; default tau / (4 N)
  std::optional<std::uint64_t> max_events; ///< default 10^4 |E| N
  bool record_trajectories = false;
  std::vector<Opinion> probe_points;       ///< reference opinions c for X_t^c, each in the space
};

/// SimParams with the graph-dependent defaults filled in.
struct ResolvedParams
{
  double tau;
  double mu;
  double eps_stop;
  std::uint64_t max_events;
};

double default_eps_stop(double tau, std::size_t vertex_count);
std::uint64_t default_max_events(const Graph& graph);

/// Throws ValidationError (ranges, probe membership) or DimensionError.
ResolvedParams resolve(const SimParams& params, const Graph& graph, const OpinionSpace& space);

// ---------------------------------------------------------------------------

/// The update on edge (x, y): both opinions move by mu toward each other iff their distance is <= tau.
Configuration step(const Configuration& config, const Graph& graph, Edge edge, double tau, double mu,
                   const Norm& norm);

struct EventDraw
{
  EdgeId edge;
  double dt;
};

/// Superposed unit-rate edge clocks: a uniform edge after an Exponential(n_edges) wait.
EventDraw next_event(Rng& rng, std::size_t n_edges);

/// Vertex classes of a configuration; classes are ordered by their smallest vertex.
struct Partition
{
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::size_t> label; ///< class index of each vertex

  std::size_t size() const noexcept { return classes.size(); }
};

/**
 * Absorption test at resolution eps_stop.
 *
 * Returns the connected components of the subgraph of edges closer than
 * eps_stop iff no edge has distance in [eps_stop, tau].
 */
std::optional<Partition> detect_absorption(const Configuration& config, const Graph& graph, const Norm& norm,
                                           double tau, double eps_stop);

/**
 * Sufficient condition for the partition to be final.
 *
 * Every future opinion of a vertex stays in the convex hull of its class, whose
 * diameter equals the largest pairwise distance inside the class. If each class
 * has diameter <= tau and every cross-class edge keeps distance > tau even after
 * both endpoints move by their class diameters, cross-class edges never interact
 * again and every class converges to a single opinion.
 */
bool partition_is_stable(const Partition& partition, const Configuration& config, const Graph& graph,
                         const Norm& norm, double tau);

// ---------------------------------------------------------------------------

enum class Classification
{
  Consensus,
  Fragmented,
  Undecided
};

std::string to_string(Classification c);

/// One row of a recorded trajectory.
struct EventRecord
{
  std::uint64_t event_index;
  double time;
  Vertex u;
  Vertex v;
  bool interacted;
  double displacement; ///< ||xi_s(x) - xi_{s-}(x)|| for the updated vertices, 0 without interaction
};

/// X_t^c = sum_x ||xi_t(x) - c|| for each probe c, sampled after every event.
struct Trajectory
{
  std::vector<Opinion> probes;
  std::vector<double> initial_values;
  std::vector<EventRecord> events;
  std::vector<double> values; ///< events.size() x probes.size(), row-major

  std::span<const double> row(std::size_t event) const
  {
    return {values.data() + event * probes.size(), probes.size()};
  }
};

struct RunOutcome
{
  Classification classification = Classification::Undecided;
  Configuration final_configuration;
  Partition partition;                   ///< empty when Undecided
  std::optional<double> t_star;          ///< first time no pair is at distance in [tau/2, tau]
  std::optional<std::uint64_t> t_star_event;
  bool event_a = false;                  ///< some vertex within tau of every point of the space, at T_*
  std::uint64_t total_events = 0;
  double final_time = 0.0;
  std::uint64_t unstable_detections = 0; ///< absorption detected but not yet certified stable
  std::optional<Trajectory> trajectory;

  std::size_t class_count() const noexcept { return partition.size(); }
};

/**
 * Event-driven engine for one trajectory.
 *
 * Keeps per-edge distance bands so each event costs O(deg x + deg y): the
 * number of edges in [eps_stop, tau] (absorption requires zero) and in
 * [tau/2, tau] (T_* requires zero, then an all-pairs check confirms it).
 */
class Engine
{
public:
  Engine(const Graph& graph, const OpinionSpace& space, Configuration initial, const SimParams& params);

  struct StepResult
  {
    bool interacted;
    double displacement;
  };

  /// Fires edge `edge` after waiting `dt`.
  StepResult fire(EdgeId edge, double dt);

  /// Draws the next event and fires it.
  StepResult advance(Rng& rng);

  /// Absorbed and certified stable: returns the final partition.
  std::optional<Partition> try_absorb();

  const Configuration& configuration() const noexcept { return config_; }
  const ResolvedParams& params() const noexcept { return params_; }
  std::size_t active_edge_count() const noexcept { return active_edges_; }
  std::size_t critical_edge_count() const noexcept { return critical_edges_; }
  std::span<const double> probe_totals() const noexcept { return probe_totals_; }
  const std::optional<double>& t_star() const noexcept { return t_star_; }
  bool event_a() const noexcept { return event_a_; }

  RunOutcome outcome(Classification classification, Partition partition);

private:
  enum Band : unsigned char
  {
    below_eps = 0,
    active = 1,
    above_tau = 2
  };

  void classify_edge(EdgeId id);
  void refresh_vertex(Vertex v);
  void check_t_star();
  double probe_total(std::size_t probe) const;

  const Graph* graph_;
  const OpinionSpace* space_;
  Configuration config_;
  ResolvedParams params_;
  std::vector<Opinion> probes_;
  bool record_;

  std::vector<unsigned char> band_;
  std::vector<unsigned char> critical_;
  std::size_t active_edges_ = 0;
  std::size_t critical_edges_ = 0;

  std::vector<double> probe_totals_;
  std::optional<double> t_star_;
  std::optional<std::uint64_t> t_star_event_;
  bool event_a_ = false;
  std::uint64_t unstable_detections_ = 0;

  Trajectory trajectory_;
  std::vector<double> scratch_;
};

/// Runs until certified absorption or max_events.
RunOutcome run(const Graph& graph, const OpinionSpace& space, const InitialDistribution& dist,
               const SimParams& params, Rng& rng);

/// Called after every event with the engine state, the fired edge and the step result.
using EventObserver = std::function<void(const Engine&, const Edge&, const Engine::StepResult&)>;

/// As `run`, from a given initial configuration.
RunOutcome run_from(const Graph& graph, const OpinionSpace& space, Configuration initial,
                    const SimParams& params, Rng& rng, const EventObserver& observer = {});

/// Applies `step` along an explicit edge sequence; returns the initial and every subsequent configuration.
std::vector<Configuration> replay(const Graph& graph, const OpinionSpace& space, const Configuration& initial,
                                  const SimParams& params, std::span<const Edge> edge_sequence);

} // namespace deffuant

#endif
