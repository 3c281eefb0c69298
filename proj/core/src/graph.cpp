#include "deffuant/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "deffuant/errors.hpp"
#include "deffuant/rng.hpp"

namespace deffuant
{

namespace
{

std::pair<Vertex, Vertex> ordered(const Edge& e) { return std::minmax(e.u, e.v); }

void check_structure(std::size_t vertex_count, std::span<const Edge> edges)
{
  if (vertex_count == 0) {
    throw StructureError("graph must have at least one vertex");
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw StructureError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") references a vertex outside 0.." + std::to_string(vertex_count - 1));
    }
    if (e.u == e.v) {
      throw StructureError("self-loop at vertex " + std::to_string(e.u));
    }
    if (!seen.insert(ordered(e)).second) {
      throw StructureError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
  }
}

void check_connected(std::size_t vertex_count, std::span<const Edge> edges)
{
  std::vector<std::vector<Vertex>> adjacent(vertex_count);
  for (const Edge& e : edges) {
    adjacent[e.u].push_back(e.v);
    adjacent[e.v].push_back(e.u);
  }
  std::vector<bool> reached(vertex_count, false);
  std::vector<Vertex> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adjacent[x]) {
      if (!reached[y]) {
        reached[y] = true;
        stack.push_back(y);
      }
    }
  }
  const auto it = std::find(reached.begin(), reached.end(), false);
  if (it != reached.end()) {
    throw ConnectivityError(static_cast<std::size_t>(it - reached.begin()));
  }
}

void require(bool ok, const std::string& message)
{
  if (!ok) {
    throw ValidationError(message);
  }
}

} // namespace

void validate(std::size_t vertex_count, std::span<const Edge> edges)
{
  check_structure(vertex_count, edges);
  check_connected(vertex_count, edges);
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
  : vertex_count_(vertex_count)
  , edges_(std::move(edges))
{
  validate(vertex_count_, edges_);

  // CSR incidence index
  offsets_.assign(vertex_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    offsets_[v + 1] += offsets_[v];
  }
  incidence_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    incidence_[fill[edges_[id].u]++] = id;
    incidence_[fill[edges_[id].v]++] = id;
  }
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const
{
  if (v >= vertex_count_) {
    throw StructureError("vertex " + std::to_string(v) + " out of range");
  }
  return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const
{
  if (u >= vertex_count_ || v >= vertex_count_) {
    return std::nullopt;
  }
  const Vertex pivot = degree(u) <= degree(v) ? u : v;
  const Vertex other = pivot == u ? v : u;
  for (EdgeId id : incident_edges(pivot)) {
    const Edge& e = edges_[id];
    if ((e.u == pivot && e.v == other) || (e.v == pivot && e.u == other)) {
      return id;
    }
  }
  return std::nullopt;
}

bool Graph::same_structure(const Graph& other) const
{
  if (vertex_count_ != other.vertex_count_ || edges_.size() != other.edges_.size()) {
    return false;
  }
  std::vector<std::pair<Vertex, Vertex>> a, b;
  for (const Edge& e : edges_) {
    a.push_back(ordered(e));
  }
  for (const Edge& e : other.edges_) {
    b.push_back(ordered(e));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void validate(const Graph& graph)
{
  validate(graph.vertex_count(), graph.edges());
  std::size_t total = 0;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    for (EdgeId id : graph.incident_edges(v)) {
      const Edge& e = graph.edge(id);
      if (e.u != v && e.v != v) {
        throw StructureError("adjacency index of vertex " + std::to_string(v) + " lists edge " +
                             std::to_string(id) + " which is not incident to it");
      }
    }
    total += graph.degree(v);
  }
  if (total != 2 * graph.edge_count()) {
    throw StructureError("adjacency index does not cover every edge endpoint exactly once");
  }
}

// ---------------------------------------------------------------------------

std::string GraphSpec::to_string() const
{
  std::ostringstream out;
  switch (kind) {
  case GraphKind::Complete:
    out << "complete:" << n;
    break;
  case GraphKind::Path:
    out << "path:" << n;
    break;
  case GraphKind::Cycle:
    out << "cycle:" << n;
    break;
  case GraphKind::Torus2d:
    out << "torus:" << n << 'x' << height;
    break;
  case GraphKind::Star:
    out << "star:" << n;
    break;
  case GraphKind::ErdosRenyiConnected:
    out << "er:" << n << ':' << p;
    break;
  }
  return out.str();
}

GeneratedGraph generate(const GraphSpec& spec, std::uint64_t seed)
{
  std::vector<Edge> edges;
  const std::size_t n = spec.n;
  switch (spec.kind) {
  case GraphKind::Complete:
    require(n >= 2, "complete graph needs n >= 2");
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        edges.push_back({u, v});
      }
    }
    return {Graph(n, std::move(edges)), 0};
  case GraphKind::Path:
    require(n >= 2, "path needs n >= 2");
    for (Vertex u = 0; u + 1 < n; ++u) {
      edges.push_back({u, u + 1});
    }
    return {Graph(n, std::move(edges)), 0};
  case GraphKind::Cycle:
    require(n >= 3, "cycle needs n >= 3");
    for (Vertex u = 0; u < n; ++u) {
      edges.push_back({u, (u + 1) % n});
    }
    return {Graph(n, std::move(edges)), 0};
  case GraphKind::Star:
    require(n >= 2, "star needs n >= 2");
    for (Vertex v = 1; v < n; ++v) {
      edges.push_back({0, v});
    }
    return {Graph(n, std::move(edges)), 0};
  case GraphKind::Torus2d: {
    // Widths below 3 would wrap onto an existing edge.
    const std::size_t w = spec.n;
    const std::size_t h = spec.height;
    require(w >= 3 && h >= 3, "torus needs width >= 3 and height >= 3");
    const auto id = [w](std::size_t col, std::size_t row) { return row * w + col; };
    for (std::size_t row = 0; row < h; ++row) {
      for (std::size_t col = 0; col < w; ++col) {
        edges.push_back({id(col, row), id((col + 1) % w, row)});
        edges.push_back({id(col, row), id(col, (row + 1) % h)});
      }
    }
    return {Graph(w * h, std::move(edges)), 0};
  }
  case GraphKind::ErdosRenyiConnected: {
    require(n >= 2, "Erdos-Renyi graph needs n >= 2");
    require(spec.p > 0.0 && spec.p <= 1.0, "Erdos-Renyi edge probability must lie in (0, 1]");
    Rng rng(seed);
    std::size_t rejected = 0;
    for (;;) {
      edges.clear();
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (rng.uniform01() < spec.p) {
            edges.push_back({u, v});
          }
        }
      }
      try {
        return {Graph(n, edges), rejected};
      } catch (const ConnectivityError&) {
        ++rejected;
      }
    }
  }
  }
  throw ValidationError("unknown graph kind");
}

// ---------------------------------------------------------------------------

Graph load_edge_list(std::string_view text)
{
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      continue;
    }
    line.remove_prefix(first);

    std::size_t ids[2];
    for (std::size_t k = 0; k < 2; ++k) {
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) {
        throw ParseError(line_no, "expected two vertex ids");
      }
      line.remove_prefix(start);
      const char* begin = line.data();
      const char* end = line.data() + line.size();
      const auto [ptr, ec] = std::from_chars(begin, end, ids[k]);
      if (ec != std::errc{} || (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
        throw ParseError(line_no, "vertex id is not a non-negative integer");
      }
      line.remove_prefix(static_cast<std::size_t>(ptr - begin));
    }
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      throw ParseError(line_no, "trailing characters after the two vertex ids");
    }
    edges.push_back({ids[0], ids[1]});
    max_id = std::max({max_id, ids[0], ids[1]});
  }
  if (edges.empty()) {
    throw ParseError(line_no, "edge list contains no edges");
  }
  return Graph(max_id + 1, std::move(edges));
}

std::string serialize_edge_list(const Graph& graph)
{
  std::ostringstream out;
  for (const Edge& e : graph.edges()) {
    out << e.u << ' ' << e.v << '\n';
  }
  return out.str();
}

} // namespace deffuant
