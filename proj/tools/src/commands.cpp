#include "deffuant/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deffuant/analysis.hpp"
#include "deffuant/lemma_checks.hpp"

namespace deffuant::cli
{

namespace
{

using nlohmann::ordered_json;

// Stream indices reserved for auxiliary draws; replicate i uses stream i.
constexpr std::uint64_t bound_stream = 0xB0B0'0000'0000'0001ULL;
constexpr std::uint64_t probe_stream = 0xB0B0'0000'0000'0002ULL;

std::string optional_number(const std::optional<double>& value)
{
  return value ? format_double(*value) : std::string();
}

ordered_json optional_json(const std::optional<double>& value)
{
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

BoundReport compute_bound(double tau, const InitialDistribution& dist, std::size_t samples, std::uint64_t seed)
{
  try {
    return consensus_lower_bound(tau, dist.space(), expected_disagreement_analytic(dist));
  } catch (const UnsupportedError&) {
    if (samples < 2) {
      throw UsageError("bound_samples must be at least 2 when no closed form exists");
    }
    Rng rng = Rng::stream(seed, bound_stream);
    return consensus_lower_bound(tau, dist.space(),
                                 expected_disagreement_mc(dist, dist.space().center(), samples, rng));
  }
}

ordered_json bound_json(const BoundReport& bound)
{
  ordered_json j;
  j["tau"] = bound.tau;
  j["diameter"] = bound.diameter;
  j["center"] = bound.center;
  j["expected_disagreement"] = bound.expected_disagreement;
  j["expected_std_error"] = bound.expected_std_error;
  j["expected_is_analytic"] = bound.expected_is_analytic;
  j["applicable"] = bound.applicable;
  j["raw_bound"] = optional_json(bound.raw_bound);
  j["clamped_bound"] = bound.clamped_bound;
  if (!bound.applicable) {
    j["note"] = "inapplicable: tau <= D/2";
  }
  return j;
}

ordered_json interval_json(const Interval& interval)
{
  return ordered_json{{"lo", interval.lo}, {"hi", interval.hi}};
}

ordered_json estimate_json(const EstimateReport& report)
{
  ordered_json j;
  j["n_runs"] = report.n_runs;
  j["n_consensus"] = report.n_consensus;
  j["n_fragmented"] = report.n_fragmented;
  j["n_undecided"] = report.n_undecided;
  j["master_seed"] = report.master_seed;
  j["alpha"] = report.alpha;
  j["z"] = report.z;
  j["point_estimate"] = report.point_estimate;
  j["wilson"] = interval_json(report.wilson);
  j["pessimistic_estimate"] = report.pessimistic_estimate;
  j["pessimistic_wilson"] = interval_json(report.pessimistic_wilson);
  j["n_t_star"] = report.n_t_star;
  j["mean_t_star"] = report.mean_t_star;
  j["n_event_a"] = report.n_event_a;
  j["event_a_frequency"] = report.event_a_frequency;
  j["n_event_a_not_consensus"] = report.n_event_a_not_consensus;
  return j;
}

ordered_json scenario_json(const RunConfig& config, const Scenario& scenario)
{
  const ResolvedParams resolved = resolve(scenario.params, scenario.graph, scenario.space);
  ordered_json j;
  j["graph"] = config.graph;
  j["vertices"] = scenario.graph.vertex_count();
  j["edges"] = scenario.graph.edge_count();
  j["rejected_draws"] = scenario.rejected_draws;
  j["space"] = scenario.space.describe();
  j["dist"] = scenario.dist.describe();
  j["tau"] = resolved.tau;
  j["mu"] = resolved.mu;
  j["eps_stop"] = resolved.eps_stop;
  j["max_events"] = resolved.max_events;
  return j;
}

/// Writes the summary to stdout and, when requested, to the summary file.
void emit_summary(const RunConfig& config, const ordered_json& summary, std::ostream& out)
{
  const std::string text = summary.dump(2) + "\n";
  out << text;
  if (!config.summary.empty()) {
    std::ofstream file(config.summary, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) {
      throw IoError("cannot write '" + config.summary + "'");
    }
  }
}

std::vector<Opinion> probe_points(const Scenario& scenario, std::size_t count, std::uint64_t seed)
{
  std::vector<Opinion> probes;
  if (count == 0) {
    return probes;
  }
  probes.push_back(scenario.space.center());
  Rng rng = Rng::stream(seed, probe_stream);
  const InitialDistribution uniform = InitialDistribution::uniform(scenario.space);
  Sampler sampler(uniform);
  while (probes.size() < count) {
    probes.push_back(sampler(rng));
  }
  return probes;
}

void write_trajectory(const std::string& path, const Trajectory& trajectory)
{
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot write '" + path + "'");
  }
  file << "event_index,time,edge_u,edge_v,interacted";
  for (std::size_t k = 0; k < trajectory.probes.size(); ++k) {
    file << ",X_c" << k;
  }
  file << "\n0,0,-1,-1,0";
  for (double value : trajectory.initial_values) {
    file << ',' << format_double(value);
  }
  file << '\n';
  for (std::size_t i = 0; i < trajectory.events.size(); ++i) {
    const EventRecord& e = trajectory.events[i];
    file << e.event_index << ',' << format_double(e.time) << ',' << e.u << ',' << e.v << ','
         << (e.interacted ? 1 : 0);
    for (double value : trajectory.row(i)) {
      file << ',' << format_double(value);
    }
    file << '\n';
  }
  if (!file) {
    throw IoError("cannot write '" + path + "'");
  }
}

const std::string run_header = "run_id,seed,classification,n_classes,events,final_time,T_star,event_A";
const std::string sweep_header = "tau,clamped_bound,point_estimate,wilson_lo,wilson_hi,undecided";
const std::string bound_header =
    "tau,diameter,expected_disagreement,expected_std_error,applicable,raw_bound,clamped_bound";

std::string run_row(const RunRecord& r)
{
  std::ostringstream row;
  row << r.run_id << ',' << r.seed << ',' << to_string(r.classification) << ',' << r.n_classes << ','
      << r.events << ',' << format_double(r.final_time) << ',' << optional_number(r.t_star) << ','
      << (r.event_a ? 1 : 0);
  return row.str();
}

std::string print_check(const PropertyCheck& check)
{
  std::ostringstream line;
  line << (check.passed() ? "PASS " : "FAIL ") << check.name << " trials=" << check.trials
       << " violations=" << check.violations << " worst_margin=" << format_double(check.worst_margin) << " ("
       << check.claim << ")";
  if (!check.counterexample.empty()) {
    line << "\n  counterexample: " << check.counterexample;
  }
  return line.str();
}

/// Values given on the command line; each one set overrides the configuration file.
struct Overrides
{
  std::string config_path;
  std::optional<std::string> graph, space, dist, out, summary, trajectory_dir;
  std::optional<double> tau, mu, eps_stop, alpha;
  std::optional<std::uint64_t> seed, max_events, conservation_events;
  std::optional<std::size_t> runs, workers, probes, trajectory_runs, bound_samples, geometry_trials, traces,
      long_traces;
  std::optional<std::string> taus;
  std::string inject_fault;
};

template <typename T>
void take(T& field, const std::optional<T>& value)
{
  if (value) {
    field = *value;
  }
}

RunConfig build_config(const Overrides& o)
{
  RunConfig config = o.config_path.empty() ? RunConfig{} : load_config_file(o.config_path);
  take(config.graph, o.graph);
  take(config.space, o.space);
  take(config.dist, o.dist);
  take(config.out, o.out);
  take(config.summary, o.summary);
  take(config.trajectory_dir, o.trajectory_dir);
  take(config.tau, o.tau);
  take(config.mu, o.mu);
  take(config.alpha, o.alpha);
  take(config.seed, o.seed);
  take(config.conservation_events, o.conservation_events);
  take(config.runs, o.runs);
  take(config.workers, o.workers);
  take(config.probes, o.probes);
  take(config.trajectory_runs, o.trajectory_runs);
  take(config.bound_samples, o.bound_samples);
  take(config.geometry_trials, o.geometry_trials);
  take(config.traces, o.traces);
  take(config.long_traces, o.long_traces);
  if (o.eps_stop) {
    config.eps_stop = o.eps_stop;
  }
  if (o.max_events) {
    config.max_events = o.max_events;
  }
  if (o.taus) {
    config.taus = parse_number_list(*o.taus);
  }
  if (!o.inject_fault.empty()) {
    if (o.inject_fault != "mu") {
      throw UsageError("unknown fault '" + o.inject_fault + "' (expected mu)");
    }
    config.mu = 0.7;
  }
  return config;
}

void add_common(CLI::App* cmd, Overrides& o)
{
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--runs", o.runs, "number of replicates");
  cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
  cmd->add_option("--out", o.out, "CSV output path (appended)");
  cmd->add_option("--summary", o.summary, "JSON summary output path");
  cmd->add_option("--tau", o.tau, "confidence threshold");
  cmd->add_option("--mu", o.mu, "convergence parameter in (0, 0.5]");
  cmd->add_option("--eps-stop", o.eps_stop, "absorption resolution");
  cmd->add_option("--max-events", o.max_events, "event budget per run");
  cmd->add_option("--graph", o.graph, "complete:N | path:N | cycle:N | torus:WxH | star:N | er:N:P | file:PATH");
  cmd->add_option("--space", o.space, "ball:d:r:norm[:c1,..,cd] | box:d:norm[:lo:hi]");
  cmd->add_option("--dist", o.dist, "uniform | triangular | point:x1,..,xd");
  cmd->add_option("--alpha", o.alpha, "Wilson interval level is 1 - alpha");
  cmd->add_option("--bound-samples", o.bound_samples, "Monte Carlo samples when no closed form exists");
}

} // namespace

std::string format_double(double value)
{
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ec == std::errc{} ? ptr : buffer);
}

void append_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows)
{
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (!fresh) {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    if (first != header) {
      throw IoError("'" + path + "' exists with a different CSV header");
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::app);
  if (!file) {
    throw IoError("cannot write '" + path + "'");
  }
  if (fresh) {
    file << header << '\n';
  }
  for (const auto& row : rows) {
    file << row << '\n';
  }
  if (!file) {
    throw IoError("cannot write '" + path + "'");
  }
}

int cmd_bound(const RunConfig& config, std::ostream& out)
{
  const OpinionSpace space = parse_space(config.space);
  const InitialDistribution dist = parse_dist(config.dist, space);
  if (!(config.tau > 0.0)) {
    throw UsageError("tau must be positive");
  }
  const BoundReport bound = compute_bound(config.tau, dist, config.bound_samples, config.seed);
  ordered_json summary;
  summary["command"] = "bound";
  summary["space"] = space.describe();
  summary["dist"] = dist.describe();
  summary["bound"] = bound_json(bound);
  emit_summary(config, summary, out);
  if (!config.out.empty()) {
    append_csv(config.out, bound_header,
               {format_double(bound.tau) + ',' + format_double(bound.diameter) + ',' +
                format_double(bound.expected_disagreement) + ',' + format_double(bound.expected_std_error) + ',' +
                (bound.applicable ? "1" : "0") + ',' + optional_number(bound.raw_bound) + ',' +
                format_double(bound.clamped_bound)});
  }
  return exit_ok;
}

int cmd_simulate(const RunConfig& config, std::ostream& out)
{
  if (config.runs == 0) {
    throw UsageError("runs must be positive");
  }
  const Scenario scenario = materialize(config);
  const auto outcomes = run_replicates(scenario.graph, scenario.space, scenario.dist, scenario.params, config.runs,
                                       config.seed, config.workers);
  const EstimateReport report = summarize(outcomes, config.seed, config.alpha);
  const BoundReport bound = compute_bound(config.tau, scenario.dist, config.bound_samples, config.seed);

  ordered_json summary;
  summary["command"] = "simulate";
  summary["scenario"] = scenario_json(config, scenario);
  summary["estimate"] = estimate_json(report);
  summary["bound"] = bound_json(bound);

  if (!config.trajectory_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.trajectory_dir, ec);
    if (ec) {
      throw IoError("cannot create '" + config.trajectory_dir + "'");
    }
    SimParams traced = scenario.params;
    traced.record_trajectories = true;
    traced.probe_points = probe_points(scenario, std::max<std::size_t>(config.probes, 1), config.seed);
    const std::size_t count = std::min(config.trajectory_runs, config.runs);
    ordered_json files = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng = Rng::stream(config.seed, i);
      const RunOutcome traced_outcome = run(scenario.graph, scenario.space, scenario.dist, traced, rng);
      const auto path = (std::filesystem::path(config.trajectory_dir) / ("run_" + std::to_string(i) + ".csv")).string();
      write_trajectory(path, *traced_outcome.trajectory);
      files.push_back(path);
    }
    summary["trajectories"] = files;
  }

  emit_summary(config, summary, out);
  if (!config.out.empty()) {
    std::vector<std::string> rows;
    rows.reserve(report.runs.size());
    for (const auto& r : report.runs) {
      rows.push_back(run_row(r));
    }
    append_csv(config.out, run_header, rows);
  }
  return exit_ok;
}

int cmd_sweep(const RunConfig& config, std::ostream& out)
{
  if (config.taus.empty()) {
    throw UsageError("sweep needs a nonempty tau grid (--taus)");
  }
  for (std::size_t i = 1; i < config.taus.size(); ++i) {
    if (!(config.taus[i] > config.taus[i - 1])) {
      throw UsageError("tau grid must be strictly ascending");
    }
  }
  if (config.runs == 0) {
    throw UsageError("runs must be positive");
  }
  RunConfig first = config;
  first.tau = config.taus.front();
  Scenario scenario = materialize(first);

  std::vector<std::string> rows;
  ordered_json points = ordered_json::array();
  for (double tau : config.taus) {
    scenario.params.tau = tau;
    resolve(scenario.params, scenario.graph, scenario.space);
    // Every grid point reuses the same replicate seeds.
    const EstimateReport report = estimate_consensus(scenario.graph, scenario.space, scenario.dist, scenario.params,
                                                     config.runs, config.seed, config.workers, config.alpha);
    const BoundReport bound = compute_bound(tau, scenario.dist, config.bound_samples, config.seed);
    rows.push_back(format_double(tau) + ',' + format_double(bound.clamped_bound) + ',' +
                   format_double(report.point_estimate) + ',' + format_double(report.wilson.lo) + ',' +
                   format_double(report.wilson.hi) + ',' + std::to_string(report.n_undecided));
    ordered_json point;
    point["bound"] = bound_json(bound);
    point["estimate"] = estimate_json(report);
    points.push_back(std::move(point));
  }

  ordered_json summary;
  summary["command"] = "sweep";
  summary["scenario"] = scenario_json(first, scenario);
  summary["scenario"].erase("tau");
  summary["points"] = points;
  if (!config.out.empty()) {
    append_csv(config.out, sweep_header, rows);
  }
  emit_summary(config, summary, out);
  return exit_ok;
}

int cmd_check(const RunConfig& config, std::ostream& out)
{
  const Scenario scenario = materialize(config);

  LemmaCheckConfig lemma;
  lemma.seed = config.seed;
  lemma.geometry_trials = config.geometry_trials;
  lemma.traces = config.traces;
  lemma.probes = std::max<std::size_t>(config.probes, 1);
  lemma.long_traces = config.long_traces;
  lemma.conservation_events = config.conservation_events;
  LemmaReport report = lemma_check_report(lemma);

  if (config.runs > 0) {
    const auto outcomes = run_replicates(scenario.graph, scenario.space, scenario.dist, scenario.params,
                                         config.runs, config.seed, config.workers);
    for (auto check : check_outcomes(outcomes, scenario.graph, scenario.space, scenario.params)) {
      check.name = "configured_" + check.name;
      report.checks.push_back(std::move(check));
    }
  }

  for (const auto& check : report.checks) {
    out << print_check(check) << '\n';
  }
  const bool ok = report.all_passed();
  out << (ok ? "all checks passed" : "property violations found") << '\n';
  return ok ? exit_ok : exit_violation;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Multivariate bounded-confidence opinion dynamics on graphs", "deffuant"};
  app.require_subcommand(1);
  Overrides o;

  auto* bound = app.add_subcommand("bound", "consensus lower bound for a space, law and tau");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the consensus probability");
  auto* sweep = app.add_subcommand("sweep", "bound and estimate over an ascending tau grid");
  auto* check = app.add_subcommand("check", "executable property suite");
  for (auto* cmd : {bound, simulate, sweep, check}) {
    add_common(cmd, o);
  }
  for (auto* cmd : {simulate, check}) {
    cmd->add_option("--probes", o.probes, "reference points for X_t^c");
  }
  simulate->add_option("--trajectory-dir", o.trajectory_dir, "directory for per-run trajectory CSVs");
  simulate->add_option("--trajectory-runs", o.trajectory_runs, "number of runs to record");
  sweep->add_option("--taus", o.taus, "comma-separated ascending tau grid");
  check->add_option("--geometry-trials", o.geometry_trials, "random trials of the geometric inequalities");
  check->add_option("--traces", o.traces, "recorded traces");
  check->add_option("--long-traces", o.long_traces, "long traces for jump-size comparison");
  check->add_option("--conservation-events", o.conservation_events, "events of the conservation run");
  check->add_option("--inject-fault", o.inject_fault, "test hook: 'mu' sets mu to 0.7");

  std::vector<const char*> argv{"deffuant"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    const RunConfig config = build_config(o);
    if (bound->parsed()) {
      return cmd_bound(config, out);
    }
    if (simulate->parsed()) {
      return cmd_simulate(config, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config, out);
    }
    return cmd_check(config, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

} // namespace deffuant::cli
