#include "deffuant/cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace deffuant::cli
{

namespace
{

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      return parts;
    }
    start = pos + 1;
  }
}

double to_double(std::string_view text, std::string_view what)
{
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::size_t to_size(std::string_view text, std::string_view what)
{
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key)
{
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("configuration key '" + key + "' has the wrong type");
  }
}

} // namespace

std::vector<double> parse_number_list(std::string_view text)
{
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    values.push_back(to_double(part, "number"));
  }
  return values;
}

Norm parse_norm(std::string_view text, std::size_t dimension)
{
  if (text == "l1") {
    return Norm::l1(dimension);
  }
  if (text == "l2") {
    return Norm::l2(dimension);
  }
  if (text == "linf") {
    return Norm::linf(dimension);
  }
  if (text.size() > 1 && text.front() == 'l') {
    return Norm::lp(dimension, to_double(text.substr(1), "norm exponent"));
  }
  throw UsageError("unknown norm '" + std::string(text) + "' (expected l1, l2, linf or l<p>)");
}

OpinionSpace parse_space(std::string_view text)
{
  const auto parts = split(text, ':');
  if (parts.size() < 3) {
    throw UsageError("space must be ball:d:r:norm[:center] or box:d:norm[:lo:hi], got '" + std::string(text) + "'");
  }
  const std::size_t d = to_size(parts[1], "space dimension");
  if (d == 0) {
    throw UsageError("space dimension must be positive");
  }
  if (parts[0] == "ball") {
    if (parts.size() != 4 && parts.size() != 5) {
      throw UsageError("ball space must be ball:d:r:norm[:c1,..,cd]");
    }
    const double r = to_double(parts[2], "ball radius");
    const Norm norm = parse_norm(parts[3], d);
    Opinion center(d, 0.0);
    if (parts.size() == 5) {
      center = parse_number_list(parts[4]);
      if (center.size() != d) {
        throw UsageError("ball center needs " + std::to_string(d) + " coordinates");
      }
    }
    return OpinionSpace::of_ball(std::move(center), r, norm);
  }
  if (parts[0] == "box") {
    if (parts.size() != 3 && parts.size() != 5) {
      throw UsageError("box space must be box:d:norm[:lo:hi]");
    }
    const Norm norm = parse_norm(parts[2], d);
    double lo = 0.0;
    double hi = 1.0;
    if (parts.size() == 5) {
      lo = to_double(parts[3], "box lower bound");
      hi = to_double(parts[4], "box upper bound");
    }
    return OpinionSpace(ConvexSet::box(Opinion(d, lo), Opinion(d, hi)), norm);
  }
  throw UsageError("unknown space shape '" + std::string(parts[0]) + "'");
}

InitialDistribution parse_dist(std::string_view text, const OpinionSpace& space)
{
  if (text == "uniform") {
    return InitialDistribution::uniform(space);
  }
  if (text == "triangular") {
    return InitialDistribution::triangular(space);
  }
  if (text.starts_with("point:")) {
    return InitialDistribution::point_mass(space, parse_number_list(text.substr(6)));
  }
  throw UsageError("unknown distribution '" + std::string(text) + "' (expected uniform, triangular or point:coords)");
}

GraphSpec parse_graph_spec(std::string_view text)
{
  const auto parts = split(text, ':');
  const auto& kind = parts[0];
  const auto need = [&](std::size_t n) {
    if (parts.size() != n) {
      throw UsageError("malformed graph specification '" + std::string(text) + "'");
    }
  };
  if (kind == "complete") {
    need(2);
    return GraphSpec::complete(to_size(parts[1], "vertex count"));
  }
  if (kind == "path") {
    need(2);
    return GraphSpec::path(to_size(parts[1], "vertex count"));
  }
  if (kind == "cycle") {
    need(2);
    return GraphSpec::cycle(to_size(parts[1], "vertex count"));
  }
  if (kind == "star") {
    need(2);
    return GraphSpec::star(to_size(parts[1], "vertex count"));
  }
  if (kind == "torus") {
    need(2);
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) {
      throw UsageError("torus must be torus:WxH");
    }
    return GraphSpec::torus(to_size(dims[0], "torus width"), to_size(dims[1], "torus height"));
  }
  if (kind == "er") {
    need(3);
    return GraphSpec::erdos_renyi(to_size(parts[1], "vertex count"), to_double(parts[2], "edge probability"));
  }
  throw UsageError("unknown graph kind '" + std::string(kind) + "'");
}

void apply_config_json(RunConfig& config, std::string_view json_text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw UsageError("configuration must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (value.is_null()) {
      if (key == "eps_stop") {
        config.eps_stop.reset();
      } else if (key == "max_events") {
        config.max_events.reset();
      } else {
        throw UsageError("configuration key '" + key + "' cannot be null");
      }
      continue;
    }
    if (key == "graph") {
      config.graph = get_as<std::string>(value, key);
    } else if (key == "space") {
      config.space = get_as<std::string>(value, key);
    } else if (key == "dist") {
      config.dist = get_as<std::string>(value, key);
    } else if (key == "tau") {
      config.tau = get_as<double>(value, key);
    } else if (key == "mu") {
      config.mu = get_as<double>(value, key);
    } else if (key == "eps_stop") {
      config.eps_stop = get_as<double>(value, key);
    } else if (key == "max_events") {
      config.max_events = get_as<std::uint64_t>(value, key);
    } else if (key == "runs") {
      config.runs = get_as<std::size_t>(value, key);
    } else if (key == "seed") {
      config.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "workers") {
      config.workers = get_as<std::size_t>(value, key);
    } else if (key == "alpha") {
      config.alpha = get_as<double>(value, key);
    } else if (key == "out") {
      config.out = get_as<std::string>(value, key);
    } else if (key == "summary") {
      config.summary = get_as<std::string>(value, key);
    } else if (key == "probes") {
      config.probes = get_as<std::size_t>(value, key);
    } else if (key == "trajectory_dir") {
      config.trajectory_dir = get_as<std::string>(value, key);
    } else if (key == "trajectory_runs") {
      config.trajectory_runs = get_as<std::size_t>(value, key);
    } else if (key == "taus") {
      config.taus = get_as<std::vector<double>>(value, key);
    } else if (key == "bound_samples") {
      config.bound_samples = get_as<std::size_t>(value, key);
    } else if (key == "geometry_trials") {
      config.geometry_trials = get_as<std::size_t>(value, key);
    } else if (key == "traces") {
      config.traces = get_as<std::size_t>(value, key);
    } else if (key == "long_traces") {
      config.long_traces = get_as<std::size_t>(value, key);
    } else if (key == "conservation_events") {
      config.conservation_events = get_as<std::uint64_t>(value, key);
    } else {
      throw UsageError("unknown configuration key '" + key + "'");
    }
  }
}

RunConfig load_config_file(const std::string& path)
{
  RunConfig config;
  apply_config_json(config, read_file(path));
  return config;
}

Scenario materialize(const RunConfig& config)
{
  OpinionSpace space = parse_space(config.space);
  InitialDistribution dist = parse_dist(config.dist, space);

  std::optional<Graph> graph;
  std::size_t rejected = 0;
  if (config.graph.starts_with("file:")) {
    graph = load_edge_list(read_file(config.graph.substr(5)));
  } else {
    auto generated = generate(parse_graph_spec(config.graph), config.seed);
    rejected = generated.rejected_draws;
    graph = std::move(generated.graph);
  }

  SimParams params;
  params.tau = config.tau;
  params.mu = config.mu;
  params.eps_stop = config.eps_stop;
  params.max_events = config.max_events;
  resolve(params, *graph, space);

  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw UsageError("alpha must lie in (0, 1)");
  }
  return {std::move(*graph), rejected, std::move(space), std::move(dist), std::move(params)};
}

} // namespace deffuant::cli
