#include "deffuant/lemma_checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "deffuant/errors.hpp"

namespace deffuant
{

namespace
{

std::string format_point(std::span<const double> v)
{
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  out << ')';
  return out.str();
}

PropertyCheck named_check(std::string name, std::string claim)
{
  PropertyCheck check;
  check.name = std::move(name);
  check.claim = std::move(claim);
  return check;
}

void record(PropertyCheck& check, double margin, bool violated, const std::string& context)
{
  ++check.trials;
  check.worst_margin = std::min(check.worst_margin, margin);
  if (violated) {
    if (check.violations == 0) {
      check.counterexample = context;
    }
    ++check.violations;
  }
}

void merge_into(PropertyCheck& into, const PropertyCheck& from)
{
  into.trials += from.trials;
  into.worst_margin = std::min(into.worst_margin, from.worst_margin);
  if (from.violations > 0 && into.violations == 0) {
    into.counterexample = from.counterexample;
  }
  into.violations += from.violations;
}

std::vector<double> coordinate_sums(const Configuration& config)
{
  std::vector<double> sums(config.dimension(), 0.0);
  for (Vertex v = 0; v < config.vertex_count(); ++v) {
    const auto o = config.opinion(v);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      sums[i] += o[i];
    }
  }
  return sums;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

std::vector<double> class_diameters(const Partition& partition, const Configuration& config, const Norm& norm)
{
  std::vector<double> out(partition.size(), 0.0);
  for (std::size_t k = 0; k < partition.size(); ++k) {
    const auto& m = partition.classes[k];
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        out[k] = std::max(out[k], norm.of_difference(config.opinion(m[i]).data(), config.opinion(m[j]).data()));
      }
    }
  }
  return out;
}

std::string scenario_label(const TraceScenario& s, std::size_t index)
{
  std::ostringstream out;
  out.precision(6);
  out << "trace " << index << " [" << s.graph.to_string() << ", " << s.dist.space().describe() << ", "
      << s.dist.describe() << ", tau=" << s.params.tau << ", mu=" << s.params.mu << ']';
  return out.str();
}

} // namespace

bool LemmaReport::all_passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed(); });
}

const PropertyCheck& LemmaReport::find(const std::string& name) const
{
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const PropertyCheck& c) { return c.name == name; });
  if (it == checks.end()) {
    throw ValidationError("no property check named " + name);
  }
  return *it;
}

// ---------------------------------------------------------------------------

std::vector<PropertyCheck> check_geometry(std::size_t trials, std::uint64_t seed, double slack)
{
  PropertyCheck first = named_check("triangle_inequality_1", "||phi(a,b)-c|| + ||phi(b,a)-c|| <= ||a-c|| + ||b-c||");
  PropertyCheck second = named_check("triangle_inequality_2",
                       "||phi(a,b)-c|| + ||phi(b,a)-c|| <= ||a-c|| + ||b-c|| - 2||phi(a,b)-a|| + ||a+b-2c||");
  PropertyCheck order = named_check("collinear_order", "a, phi(a,b), (a+b)/2, phi(b,a), b are aligned in this order");

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 1 + rng.uniform_index(3);
    const std::array norms{Norm::l1(d), Norm::l2(d), Norm::linf(d)};
    const Norm& norm = norms[rng.uniform_index(3)];
    const double mu = 0.5 * (1.0 - rng.uniform01()); // (0, 1/2]

    Opinion a(d), b(d), c(d), mid(d), shifted(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = rng.uniform(-1.0, 1.0);
      b[i] = rng.uniform(-1.0, 1.0);
      c[i] = rng.uniform(-3.0, 3.0);
      mid[i] = 0.5 * (a[i] + b[i]);
      shifted[i] = a[i] + b[i] - 2.0 * c[i];
    }
    const Opinion ab = interpolate(a, b, mu);
    const Opinion ba = interpolate(b, a, mu);
    const double lhs = distance(ab, c, norm) + distance(ba, c, norm);
    const double rhs1 = distance(a, c, norm) + distance(b, c, norm);
    const double rhs2 = rhs1 - 2.0 * distance(ab, a, norm) + norm(shifted);

    const auto context = [&] {
      std::ostringstream out;
      out.precision(17);
      out << "norm=" << norm.name() << " mu=" << mu << " a=" << format_point(a) << " b=" << format_point(b)
          << " c=" << format_point(c);
      return out.str();
    };
    const double m1 = rhs1 - lhs;
    const double m2 = rhs2 - lhs;
    record(first, m1, m1 < -slack, m1 < -slack ? context() : std::string{});
    record(second, m2, m2 < -slack, m2 < -slack ? context() : std::string{});

    const double left = distance(a, ab, norm) + distance(ab, mid, norm) - distance(a, mid, norm);
    const double right = distance(mid, ba, norm) + distance(ba, b, norm) - distance(mid, b, norm);
    const double m3 = -std::max(std::abs(left), std::abs(right));
    record(order, m3, m3 < -slack, m3 < -slack ? context() : std::string{});
  }
  return {first, second, order};
}

// ---------------------------------------------------------------------------

std::vector<TraceScenario> default_trace_scenarios(std::size_t count)
{
  const std::vector<GraphSpec> graphs{GraphSpec::complete(8), GraphSpec::path(10),     GraphSpec::cycle(12),
                                      GraphSpec::torus(4, 4), GraphSpec::star(9),      GraphSpec::erdos_renyi(12, 0.3)};
  std::vector<InitialDistribution> dists;
  {
    const OpinionSpace unit(ConvexSet::interval(0.0, 1.0), Norm::l2(1));
    dists.push_back(InitialDistribution::uniform(unit));
    const auto disc = OpinionSpace::of_ball({0.0, 0.0}, 1.0, Norm::l2(2));
    dists.push_back(InitialDistribution::triangular(disc));
    const OpinionSpace square(ConvexSet::box({0.0, 0.0}, {1.0, 1.0}), Norm::l1(2));
    dists.push_back(InitialDistribution::uniform(square));
    const auto cube = OpinionSpace::of_ball({0.0, 0.0, 0.0}, 1.0, Norm::linf(3));
    dists.push_back(InitialDistribution::uniform(cube));
    const auto diamond = OpinionSpace::of_ball({0.5, -0.5}, 0.5, Norm::l1(2));
    dists.push_back(InitialDistribution::uniform(diamond));
  }
  const std::array tau_fraction{0.3, 0.55, 0.8, 1.1};
  const std::array mus{0.5, 0.3, 0.1};

  std::vector<TraceScenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const InitialDistribution& dist = dists[i % dists.size()];
    SimParams params;
    params.tau = tau_fraction[i % tau_fraction.size()] * dist.space().diameter();
    params.mu = mus[i % mus.size()];
    out.push_back({graphs[i % graphs.size()], dist, params});
  }
  return out;
}

std::vector<TraceScenario> long_trace_scenarios(std::size_t count)
{
  const OpinionSpace unit(ConvexSet::interval(0.0, 1.0), Norm::l2(1));
  const auto disc = OpinionSpace::of_ball({0.0, 0.0}, 1.0, Norm::l2(2));
  const std::array graphs{GraphSpec::path(12), GraphSpec::cycle(16)};
  std::vector<TraceScenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    const bool planar = i % 2 == 1;
    const InitialDistribution dist =
      planar ? InitialDistribution::triangular(disc) : InitialDistribution::uniform(unit);
    SimParams params;
    params.tau = (i % 4 < 2 ? 1.0 : 0.7) * dist.space().diameter();
    params.mu = (i / 2) % 2 == 0 ? 0.1 : 0.25;
    params.eps_stop = 1e-8 * params.tau;
    out.push_back({graphs[(i / 4) % graphs.size()], dist, params});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PropertyCheck> check_outcomes(std::span<const RunOutcome> outcomes, const Graph& graph,
                                          const OpinionSpace& space, const SimParams& params)
{
  const ResolvedParams resolved = resolve(params, graph, space);
  const Norm& norm = space.norm();
  PropertyCheck p2 = named_check("absorption_separation", "absorbed: every edge distance is < eps_stop or > tau; cross-class edges > tau");
  PropertyCheck t_star = named_check("t_star_reached", "every consensus run reaches T_*");
  PropertyCheck inclusion = named_check("inclusion_a_in_c", "event A at T_* implies consensus");

  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const RunOutcome& o = outcomes[r];
    if (o.classification != Classification::Undecided) {
      const Configuration& config = o.final_configuration;
      double margin = std::numeric_limits<double>::infinity();
      std::string context;
      for (const Edge& e : graph.edges()) {
        const double d = norm.of_difference(config.opinion(e.u).data(), config.opinion(e.v).data());
        const bool cross = o.partition.label[e.u] != o.partition.label[e.v];
        // Distance to the forbidden band: intra-class edges below eps_stop, cross-class above tau.
        const double m = cross ? d - resolved.tau : resolved.eps_stop - d;
        if (m < margin) {
          margin = m;
          std::ostringstream out;
          out.precision(17);
          out << "run " << r << " edge (" << e.u << "," << e.v << ") distance " << d
              << (cross ? " across classes" : " inside a class");
          context = out.str();
        }
      }
      record(p2, margin, !(margin > 0.0), context);
    }
    if (o.classification == Classification::Consensus) {
      record(t_star, o.t_star ? 0.0 : -1.0, !o.t_star, "run " + std::to_string(r) + " reached consensus without T_*");
    }
    if (o.event_a) {
      const bool consensus = o.classification == Classification::Consensus;
      record(inclusion, consensus ? 0.0 : -1.0, !consensus,
             "run " + std::to_string(r) + " had event A at T_* but ended " + to_string(o.classification));
    }
  }
  return {p2, t_star, inclusion};
}

PropertyCheck check_convergence(std::span<const RunOutcome> outcomes, const Graph& graph, const OpinionSpace& space,
                                const SimParams& params, std::uint64_t extra_events, std::uint64_t seed)
{
  PropertyCheck check = named_check("absorbed_state_fixed",
                      "after absorption the partition is unchanged and every opinion stays within its class hull");
  SimParams plain = params;
  plain.record_trajectories = false;
  plain.probe_points.clear();
  const Norm& norm = space.norm();

  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const RunOutcome& o = outcomes[r];
    if (o.classification == Classification::Undecided) {
      continue;
    }
    const auto diameters = class_diameters(o.partition, o.final_configuration, norm);
    Engine engine(graph, space, o.final_configuration, plain);
    Rng rng = Rng::stream(seed, r);
    for (std::uint64_t k = 0; k < extra_events && graph.edge_count() > 0; ++k) {
      engine.advance(rng);
    }
    const Configuration& later = engine.configuration();
    double margin = std::numeric_limits<double>::infinity();
    bool violated = false;
    std::string context;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
      const double moved = norm.of_difference(later.opinion(v).data(), o.final_configuration.opinion(v).data());
      const double m = diameters[o.partition.label[v]] + 1e-12 - moved;
      if (m < margin) {
        margin = m;
        if (m < 0.0 && !violated) {
          violated = true;
          context = "run " + std::to_string(r) + " vertex " + std::to_string(v) + " left its class hull";
        }
      }
    }
    for (const Edge& e : graph.edges()) {
      const double d = norm.of_difference(later.opinion(e.u).data(), later.opinion(e.v).data());
      if (o.partition.label[e.u] != o.partition.label[e.v] && !(d > params.tau)) {
        margin = std::min(margin, d - params.tau);
        violated = true;
        context = "run " + std::to_string(r) + " cross-class edge (" + std::to_string(e.u) + "," +
                  std::to_string(e.v) + ") became compatible";
      }
    }
    record(check, margin, violated, context);
  }
  return check;
}

std::vector<PropertyCheck> check_traces(std::span<const TraceScenario> scenarios, std::size_t probes,
                                        std::uint64_t seed)
{
  PropertyCheck monotone = named_check("monotonicity", "0 <= X_t^c <= X_s^c <= D N for s <= t and c in the space");
  PropertyCheck membership = named_check("membership", "every opinion stays in the opinion space");
  PropertyCheck conservation = named_check("conservation", "coordinate sums of all opinions are invariant");
  PropertyCheck p2 = named_check("absorption_separation", "");
  PropertyCheck p1 = named_check("absorbed_state_fixed", "");
  PropertyCheck t_star = named_check("t_star_reached", "");
  PropertyCheck inclusion = named_check("inclusion_a_in_c", "");

  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const TraceScenario& s = scenarios[i];
    const OpinionSpace& space = s.dist.space();
    const Graph graph = generate(s.graph, Rng::stream_seed(seed, 3 * i)).graph;
    Rng probe_rng = Rng::stream(seed, 3 * i + 1);
    Rng rng = Rng::stream(seed, 3 * i + 2);

    SimParams params = s.params;
    params.record_trajectories = true;
    params.probe_points.clear();
    if (probes > 0) {
      params.probe_points.push_back(space.center());
      const InitialDistribution probe_law = InitialDistribution::uniform(space);
      Sampler uniform_probe(probe_law);
      while (params.probe_points.size() < probes) {
        params.probe_points.push_back(uniform_probe(probe_rng));
      }
    }

    const Configuration initial = initial_configuration(s.dist, graph, rng);
    const auto sums_before = coordinate_sums(initial);
    const std::string label = scenario_label(s, i);

    double worst_membership = std::numeric_limits<double>::infinity();
    std::string membership_context;
    const auto observer = [&](const Engine& engine, const Edge& e, const Engine::StepResult& step) {
      if (!step.interacted) {
        return;
      }
      for (Vertex v : {e.u, e.v}) {
        const auto o = engine.configuration().opinion(v);
        const bool inside = space.contains(o, 1e-12);
        const double m = inside ? 0.0 : -1.0;
        if (m < worst_membership) {
          worst_membership = m;
          membership_context = label + " vertex " + std::to_string(v) + " at " + format_point(o);
        }
      }
    };
    const RunOutcome outcome = run_from(graph, space, initial, params, rng, observer);
    const bool escaped = worst_membership < 0.0;
    record(membership, escaped ? -1.0 : 0.0, escaped, membership_context);

    const auto sums_after = coordinate_sums(outcome.final_configuration);
    const double drift = max_abs_difference(sums_before, sums_after);
    record(conservation, 1e-9 - drift, drift > 1e-9, label + " drift " + std::to_string(drift));

    const Trajectory& traj = *outcome.trajectory;
    const double ceiling = space.diameter() * static_cast<double>(graph.vertex_count());
    for (std::size_t k = 0; k < traj.probes.size(); ++k) {
      double margin = std::numeric_limits<double>::infinity();
      std::string context;
      double previous = traj.initial_values[k];
      const auto visit = [&](double value, std::uint64_t event) {
        const double m = std::min({previous - value + 1e-9, ceiling + 1e-9 - value, value + 1e-9});
        if (m < margin) {
          margin = m;
          std::ostringstream out;
          out.precision(17);
          out << label << " probe " << format_point(traj.probes[k]) << " event " << event << " X=" << value
              << " previous=" << previous;
          context = out.str();
        }
        previous = value;
      };
      visit(traj.initial_values[k], 0);
      for (std::size_t ev = 0; ev < traj.events.size(); ++ev) {
        visit(traj.row(ev)[k], traj.events[ev].event_index);
      }
      record(monotone, margin, margin < 0.0, context);
    }

    const std::array single{outcome};
    auto per_run = check_outcomes(single, graph, space, s.params);
    for (auto& c : per_run) {
      if (!c.counterexample.empty()) {
        c.counterexample = label + ": " + c.counterexample;
      }
    }
    merge_into(p2, per_run[0]);
    merge_into(t_star, per_run[1]);
    merge_into(inclusion, per_run[2]);
    merge_into(p1, check_convergence(single, graph, space, s.params, 20 * graph.edge_count(),
                                     Rng::stream_seed(seed, 1'000'000 + i)));
  }

  p2.claim = "absorbed: every edge distance is < eps_stop or > tau; cross-class edges > tau";
  p1.claim = "after absorption the partition is unchanged and every opinion stays within its class hull";
  t_star.claim = "every consensus run reaches T_*";
  inclusion.claim = "event A at T_* implies consensus";
  return {monotone, membership, conservation, p2, p1, t_star, inclusion};
}

PropertyCheck check_shrinking_jumps(std::span<const TraceScenario> scenarios, std::uint64_t seed,
                                    std::uint64_t min_events)
{
  PropertyCheck check = named_check("shrinking_jumps", "largest jump in the last 5% of events < largest jump in the first 5%");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const TraceScenario& s = scenarios[i];
    const Graph graph = generate(s.graph, Rng::stream_seed(seed, 2 * i)).graph;
    Rng rng = Rng::stream(seed, 2 * i + 1);
    SimParams params = s.params;
    params.record_trajectories = true;
    params.probe_points.clear();
    const RunOutcome outcome = run(graph, s.dist.space(), s.dist, params, rng);
    const auto& events = outcome.trajectory->events;
    if (outcome.classification == Classification::Undecided || events.size() < min_events) {
      continue;
    }
    const std::size_t window = std::max<std::size_t>(1, events.size() / 20);
    double early = 0.0;
    double late = 0.0;
    for (std::size_t k = 0; k < window; ++k) {
      early = std::max(early, events[k].displacement);
      late = std::max(late, events[events.size() - 1 - k].displacement);
    }
    std::ostringstream out;
    out.precision(17);
    out << scenario_label(s, i) << " early max " << early << " late max " << late << " over " << events.size()
        << " events";
    record(check, early - late, !(early > late), out.str());
  }
  return check;
}

PropertyCheck check_conservation(const Graph& graph, const InitialDistribution& dist, double tau, double mu,
                                 std::uint64_t events, std::uint64_t seed, double tolerance)
{
  PropertyCheck check = named_check("conservation_long_run", "coordinate sums unchanged after many events");
  Rng rng(seed);
  SimParams params;
  params.tau = tau;
  params.mu = mu;
  Engine engine(graph, dist.space(), initial_configuration(dist, graph, rng), params);
  const auto before = coordinate_sums(engine.configuration());
  for (std::uint64_t k = 0; k < events; ++k) {
    engine.advance(rng);
  }
  const auto after = coordinate_sums(engine.configuration());
  const double drift = max_abs_difference(before, after);
  std::ostringstream out;
  out.precision(17);
  out << "drift " << drift << " after " << events << " events";
  record(check, tolerance - drift, drift > tolerance, out.str());
  return check;
}

LemmaReport lemma_check_report(const LemmaCheckConfig& config)
{
  LemmaReport report;
  for (auto& c : check_geometry(config.geometry_trials, config.seed)) {
    report.checks.push_back(std::move(c));
  }
  const auto scenarios = default_trace_scenarios(config.traces);
  for (auto& c : check_traces(scenarios, config.probes, config.seed + 1)) {
    report.checks.push_back(std::move(c));
  }
  const auto long_scenarios = long_trace_scenarios(config.long_traces);
  report.checks.push_back(check_shrinking_jumps(long_scenarios, config.seed + 2));

  const Graph complete = generate(GraphSpec::complete(20), 0).graph;
  const OpinionSpace square(ConvexSet::box({0.0, 0.0}, {1.0, 1.0}), Norm::l2(2));
  report.checks.push_back(check_conservation(complete, InitialDistribution::uniform(square), 0.3, 0.5,
                                             config.conservation_events, config.seed + 3));
  return report;
}

} // namespace deffuant
