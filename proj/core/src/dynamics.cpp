#include "deffuant/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "deffuant/errors.hpp"

namespace deffuant
{

namespace
{

/// Union-find with path halving and union by size.
class DisjointSets
{
public:
  explicit DisjointSets(std::size_t n)
    : parent_(n)
    , size_(n, 1)
  {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b) {
      return;
    }
    if (size_[a] < size_[b]) {
      std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

void check_shape(const Configuration& config, const Graph& graph, const Norm& norm)
{
  if (config.vertex_count() != graph.vertex_count()) {
    throw DimensionError("configuration has " + std::to_string(config.vertex_count()) +
                         " vertices, graph has " + std::to_string(graph.vertex_count()));
  }
  if (config.dimension() != norm.dimension()) {
    throw DimensionError("configuration has dimension " + std::to_string(config.dimension()) +
                         ", norm has " + std::to_string(norm.dimension()));
  }
}

void check_rule_parameters(double tau, double mu)
{
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ValidationError("confidence threshold tau must be positive and finite");
  }
  if (!(mu > 0.0 && mu <= 0.5)) {
    throw ValidationError("convergence parameter mu must lie in (0, 1/2]");
  }
}

/// In-place averaging of opinions a and b.
void average(std::span<double> a, std::span<double> b, double mu)
{
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    const double bi = b[i];
    a[i] = ai + mu * (bi - ai);
    b[i] = bi + mu * (ai - bi);
  }
}

Partition partition_from(DisjointSets& sets, std::size_t n)
{
  Partition p;
  p.label.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> root_label(n, std::numeric_limits<std::size_t>::max());
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t root = sets.find(v);
    if (root_label[root] == std::numeric_limits<std::size_t>::max()) {
      root_label[root] = p.classes.size();
      p.classes.emplace_back();
    }
    p.label[v] = root_label[root];
    p.classes[root_label[root]].push_back(v);
  }
  return p;
}

} // namespace

double default_eps_stop(double tau, std::size_t vertex_count)
{
  return tau / (4.0 * static_cast<double>(std::max<std::size_t>(vertex_count, 1)));
}

std::uint64_t default_max_events(const Graph& graph)
{
  const std::uint64_t e = std::max<std::uint64_t>(graph.edge_count(), 1);
  const std::uint64_t n = graph.vertex_count();
  constexpr std::uint64_t base = 10'000;
  constexpr auto limit = std::numeric_limits<std::uint64_t>::max();
  if (e > limit / base || n > limit / (base * e)) {
    return limit;
  }
  return base * e * n;
}

ResolvedParams resolve(const SimParams& params, const Graph& graph, const OpinionSpace& space)
{
  check_rule_parameters(params.tau, params.mu);
  const double eps = params.eps_stop.value_or(default_eps_stop(params.tau, graph.vertex_count()));
  if (!(eps > 0.0 && eps < params.tau / 2.0)) {
    throw ValidationError("absorption resolution eps_stop must lie in (0, tau/2)");
  }
  const std::uint64_t max_events = params.max_events.value_or(default_max_events(graph));
  if (max_events == 0) {
    throw ValidationError("max_events must be positive");
  }
  for (const Opinion& c : params.probe_points) {
    if (c.size() != space.dimension()) {
      throw DimensionError("probe point has dimension " + std::to_string(c.size()) + ", space has " +
                           std::to_string(space.dimension()));
    }
    if (!space.contains(c, 1e-12)) {
      throw ValidationError("probe point lies outside the opinion space");
    }
  }
  return {params.tau, params.mu, eps, max_events};
}

Configuration step(const Configuration& config, const Graph& graph, Edge edge, double tau, double mu,
                   const Norm& norm)
{
  check_rule_parameters(tau, mu);
  check_shape(config, graph, norm);
  if (!graph.find_edge(edge.u, edge.v)) {
    throw GraphError("(" + std::to_string(edge.u) + "," + std::to_string(edge.v) + ") is not an edge of the graph");
  }
  Configuration next = config;
  ++next.event_count;
  auto a = next.opinion(edge.u);
  auto b = next.opinion(edge.v);
  if (norm.of_difference(a.data(), b.data()) <= tau) {
    average(a, b, mu);
  }
  return next;
}

EventDraw next_event(Rng& rng, std::size_t n_edges)
{
  if (n_edges == 0) {
    throw ValidationError("next_event needs at least one edge");
  }
  const EdgeId id = rng.uniform_index(n_edges);
  const double dt = rng.exponential(static_cast<double>(n_edges));
  return {id, dt};
}

std::optional<Partition> detect_absorption(const Configuration& config, const Graph& graph, const Norm& norm,
                                           double tau, double eps_stop)
{
  check_shape(config, graph, norm);
  DisjointSets sets(graph.vertex_count());
  for (const Edge& e : graph.edges()) {
    const double d = norm.of_difference(config.opinion(e.u).data(), config.opinion(e.v).data());
    if (d < eps_stop) {
      sets.unite(e.u, e.v);
    } else if (!(d > tau)) {
      return std::nullopt;
    }
  }
  return partition_from(sets, graph.vertex_count());
}

bool partition_is_stable(const Partition& partition, const Configuration& config, const Graph& graph,
                         const Norm& norm, double tau)
{
  std::vector<double> class_diameter(partition.size(), 0.0);
  for (std::size_t k = 0; k < partition.size(); ++k) {
    const auto& members = partition.classes[k];
    double diam = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        diam = std::max(diam, norm.of_difference(config.opinion(members[i]).data(),
                                                 config.opinion(members[j]).data()));
      }
    }
    if (diam > tau) {
      return false;
    }
    class_diameter[k] = diam;
  }
  for (const Edge& e : graph.edges()) {
    const std::size_t a = partition.label[e.u];
    const std::size_t b = partition.label[e.v];
    if (a == b) {
      continue;
    }
    const double d = norm.of_difference(config.opinion(e.u).data(), config.opinion(e.v).data());
    if (!(d - class_diameter[a] - class_diameter[b] > tau)) {
      return false;
    }
  }
  return true;
}

std::string to_string(Classification c)
{
  switch (c) {
  case Classification::Consensus:
    return "consensus";
  case Classification::Fragmented:
    return "fragmented";
  case Classification::Undecided:
    return "undecided";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

Engine::Engine(const Graph& graph, const OpinionSpace& space, Configuration initial, const SimParams& params)
  : graph_(&graph)
  , space_(&space)
  , config_(std::move(initial))
  , params_(resolve(params, graph, space))
  , probes_(params.probe_points)
  , record_(params.record_trajectories)
  , band_(graph.edge_count(), below_eps)
  , critical_(graph.edge_count(), 0)
  , scratch_(2 * space.dimension())
{
  check_shape(config_, graph, space.norm());
  for (EdgeId id = 0; id < graph.edge_count(); ++id) {
    classify_edge(id);
  }
  probe_totals_.resize(probes_.size());
  for (std::size_t k = 0; k < probes_.size(); ++k) {
    probe_totals_[k] = probe_total(k);
  }
  if (record_) {
    trajectory_.probes = probes_;
    trajectory_.initial_values = probe_totals_;
  }
  check_t_star();
}

double Engine::probe_total(std::size_t probe) const
{
  double total = 0.0;
  for (Vertex v = 0; v < config_.vertex_count(); ++v) {
    total += space_->norm().of_difference(config_.opinion(v).data(), probes_[probe].data());
  }
  return total;
}

void Engine::classify_edge(EdgeId id)
{
  const Edge& e = graph_->edge(id);
  const double d = space_->norm().of_difference(config_.opinion(e.u).data(), config_.opinion(e.v).data());
  const Band band = d < params_.eps_stop ? below_eps : (d > params_.tau ? above_tau : active);
  const unsigned char critical = (d >= params_.tau / 2.0 && d <= params_.tau) ? 1 : 0;

  active_edges_ += (band == active);
  active_edges_ -= (band_[id] == active);
  band_[id] = band;
  critical_edges_ += critical;
  critical_edges_ -= critical_[id];
  critical_[id] = critical;
}

void Engine::refresh_vertex(Vertex v)
{
  for (EdgeId id : graph_->incident_edges(v)) {
    classify_edge(id);
  }
}

void Engine::check_t_star()
{
  if (t_star_ || critical_edges_ > 0) {
    return;
  }
  const Norm& norm = space_->norm();
  const double lo = params_.tau / 2.0;
  const std::size_t n = config_.vertex_count();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const double d = norm.of_difference(config_.opinion(x).data(), config_.opinion(y).data());
      if (d >= lo && d <= params_.tau) {
        return;
      }
    }
  }
  t_star_ = config_.time;
  t_star_event_ = config_.event_count;
  event_a_ = false;
  for (Vertex x = 0; x < n && !event_a_; ++x) {
    event_a_ = space_->sup_distance(config_.opinion(x)) < params_.tau;
  }
}

Engine::StepResult Engine::fire(EdgeId id, double dt)
{
  const Edge& e = graph_->edge(id);
  config_.time += dt;
  ++config_.event_count;

  const Norm& norm = space_->norm();
  auto a = config_.opinion(e.u);
  auto b = config_.opinion(e.v);
  StepResult result{false, 0.0};

  if (norm.of_difference(a.data(), b.data()) <= params_.tau) {
    const std::size_t d = a.size();
    std::copy(a.begin(), a.end(), scratch_.begin());
    std::copy(b.begin(), b.end(), scratch_.begin() + static_cast<std::ptrdiff_t>(d));
    const double* old_a = scratch_.data();
    const double* old_b = scratch_.data() + d;

    average(a, b, params_.mu);
    result.interacted = true;
    result.displacement = norm.of_difference(a.data(), old_a);

    for (std::size_t k = 0; k < probes_.size(); ++k) {
      const double* c = probes_[k].data();
      const double before = norm.of_difference(old_a, c) + norm.of_difference(old_b, c);
      const double after = norm.of_difference(a.data(), c) + norm.of_difference(b.data(), c);
      probe_totals_[k] += after - before;
    }
    refresh_vertex(e.u);
    refresh_vertex(e.v);
    check_t_star();
  }

  if (record_) {
    trajectory_.events.push_back(
      {config_.event_count, config_.time, e.u, e.v, result.interacted, result.displacement});
    trajectory_.values.insert(trajectory_.values.end(), probe_totals_.begin(), probe_totals_.end());
  }
  return result;
}

Engine::StepResult Engine::advance(Rng& rng)
{
  const EventDraw draw = next_event(rng, graph_->edge_count());
  return fire(draw.edge, draw.dt);
}

std::optional<Partition> Engine::try_absorb()
{
  if (active_edges_ > 0) {
    return std::nullopt;
  }
  auto partition = detect_absorption(config_, *graph_, space_->norm(), params_.tau, params_.eps_stop);
  if (!partition) {
    return std::nullopt;
  }
  if (!partition_is_stable(*partition, config_, *graph_, space_->norm(), params_.tau)) {
    ++unstable_detections_;
    return std::nullopt;
  }
  return partition;
}

RunOutcome Engine::outcome(Classification classification, Partition partition)
{
  RunOutcome out;
  out.classification = classification;
  out.final_configuration = config_;
  out.partition = std::move(partition);
  out.t_star = t_star_;
  out.t_star_event = t_star_event_;
  out.event_a = t_star_ ? event_a_ : false;
  out.total_events = config_.event_count;
  out.final_time = config_.time;
  out.unstable_detections = unstable_detections_;
  if (record_) {
    out.trajectory = std::move(trajectory_);
    trajectory_ = Trajectory{};
  }
  return out;
}

// ---------------------------------------------------------------------------

RunOutcome run_from(const Graph& graph, const OpinionSpace& space, Configuration initial,
                    const SimParams& params, Rng& rng, const EventObserver& observer)
{
  Engine engine(graph, space, std::move(initial), params);
  const auto finish = [&engine](Partition p) {
    const auto c = p.size() == 1 ? Classification::Consensus : Classification::Fragmented;
    return engine.outcome(c, std::move(p));
  };

  if (auto p = engine.try_absorb()) {
    return finish(std::move(*p));
  }
  const std::uint64_t max_events = engine.params().max_events;
  // After a detection that fails the stability certificate, wait |E| events before re-checking.
  std::uint64_t next_attempt = 0;
  bool changed = false;
  while (engine.configuration().event_count < max_events) {
    const EventDraw draw = next_event(rng, graph.edge_count());
    const auto result = engine.fire(draw.edge, draw.dt);
    if (observer) {
      observer(engine, graph.edge(draw.edge), result);
    }
    changed |= result.interacted;
    const std::uint64_t now = engine.configuration().event_count;
    if (changed && engine.active_edge_count() == 0 && now >= next_attempt) {
      if (auto p = engine.try_absorb()) {
        return finish(std::move(*p));
      }
      changed = false;
      next_attempt = now + graph.edge_count();
    }
  }
  return engine.outcome(Classification::Undecided, {});
}

RunOutcome run(const Graph& graph, const OpinionSpace& space, const InitialDistribution& dist,
               const SimParams& params, Rng& rng)
{
  resolve(params, graph, space);
  return run_from(graph, space, initial_configuration(dist, graph, rng), params, rng);
}

std::vector<Configuration> replay(const Graph& graph, const OpinionSpace& space, const Configuration& initial,
                                  const SimParams& params, std::span<const Edge> edge_sequence)
{
  const ResolvedParams resolved = resolve(params, graph, space);
  check_shape(initial, graph, space.norm());
  std::vector<Configuration> out;
  out.reserve(edge_sequence.size() + 1);
  out.push_back(initial);
  for (const Edge& e : edge_sequence) {
    out.push_back(step(out.back(), graph, e, resolved.tau, resolved.mu, space.norm()));
  }
  return out;
}

} // namespace deffuant
