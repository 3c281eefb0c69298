#ifndef DEFFUANT_CLI_RUN_CONFIG_HPP
#define DEFFUANT_CLI_RUN_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deffuant/dynamics.hpp"
#include "deffuant/errors.hpp"
#include "deffuant/graph.hpp"
#include "deffuant/init.hpp"
#include "deffuant/opinion_space.hpp"

namespace deffuant::cli
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_violation = 2,
  exit_io = 3
};

/// Malformed command line or configuration value.
class UsageError : public Error
{
public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error
{
public:
  using Error::Error;
};

/**
 * Everything one command needs, as read from a JSON configuration file and
 * then overridden by command-line flags.
 */
struct RunConfig
{
  std::string graph = "complete:10"; ///< complete:N | path:N | cycle:N | torus:WxH | star:N | er:N:P | file:PATH
  std::string space = "box:1:l2";    ///< ball:d:r:norm[:c1,..,cd] | box:d:norm[:lo:hi]
  std::string dist = "uniform";      ///< uniform | triangular | point:x1,..,xd
  double tau = 0.8;
  double mu = 0.5;
  std::optional<double> eps_stop;
  std::optional<std::uint64_t> max_events;
  std::size_t runs = 100;
  std::uint64_t seed = 42;
  std::size_t workers = 0; ///< 0: hardware concurrency
  double alpha = 0.05;
  std::string out;     ///< CSV output path
  std::string summary; ///< JSON summary path (stdout always receives it)
  std::size_t probes = 0;
  std::string trajectory_dir;
  std::size_t trajectory_runs = 10;
  std::vector<double> taus; ///< sweep grid
  std::size_t bound_samples = 1'000'000;

  std::size_t geometry_trials = 100'000;
  std::size_t traces = 100;
  std::size_t long_traces = 8;
  std::uint64_t conservation_events = 1'000'000;
};

/// Reads a JSON object whose keys are RunConfig field names. Throws IoError or UsageError.
RunConfig load_config_file(const std::string& path);

/// Overrides fields of `config` from a JSON object string; unknown keys are a UsageError.
void apply_config_json(RunConfig& config, std::string_view json_text);

Norm parse_norm(std::string_view text, std::size_t dimension);
OpinionSpace parse_space(std::string_view text);
InitialDistribution parse_dist(std::string_view text, const OpinionSpace& space);
GraphSpec parse_graph_spec(std::string_view text);
std::vector<double> parse_number_list(std::string_view text);

/// A validated, ready-to-simulate configuration.
struct Scenario
{
  Graph graph;
  std::size_t rejected_draws = 0;
  OpinionSpace space;
  InitialDistribution dist;
  SimParams params;
};

/// Builds graph, space, distribution and parameters; every validation runs here.
Scenario materialize(const RunConfig& config);

} // namespace deffuant::cli

#endif
