#ifndef DEFFUANT_GRAPH_HPP
#define DEFFUANT_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deffuant
{

using Vertex = std::size_t;
using EdgeId = std::size_t;

struct Edge
{
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Finite undirected connected simple graph.
 *
 * Immutable once constructed; construction validates the edge list. Edges are
 * indexed 0..edge_count()-1 in insertion order so the engine can pick a
 * uniform edge in O(1). The adjacency index lists incident edge ids per vertex.
 */
class Graph
{
public:
  /// Throws StructureError or ConnectivityError.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  std::span<const EdgeId> incident_edges(Vertex v) const;
  std::size_t degree(Vertex v) const { return incident_edges(v).size(); }

  /// Edge id joining u and v (either orientation), if any.
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  /// Same vertex count and same edge set, ignoring edge order and orientation.
  bool same_structure(const Graph& other) const;

private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incidence_;
};

/// Checks every Graph invariant on a raw edge list; throws on the first violation.
void validate(std::size_t vertex_count, std::span<const Edge> edges);

/// Re-checks a constructed graph, including adjacency-index consistency.
void validate(const Graph& graph);

enum class GraphKind
{
  Complete,
  Path,
  Cycle,
  Torus2d,
  Star,
  ErdosRenyiConnected
};

struct GraphSpec
{
  GraphKind kind = GraphKind::Complete;
  std::size_t n = 2;      ///< vertex count (torus: width)
  std::size_t height = 0; ///< torus only
  double p = 1.0;         ///< Erdos-Renyi edge probability

  static GraphSpec complete(std::size_t n) { return {GraphKind::Complete, n, 0, 1.0}; }
  static GraphSpec path(std::size_t n) { return {GraphKind::Path, n, 0, 1.0}; }
  static GraphSpec cycle(std::size_t n) { return {GraphKind::Cycle, n, 0, 1.0}; }
  static GraphSpec torus(std::size_t w, std::size_t h) { return {GraphKind::Torus2d, w, h, 1.0}; }
  static GraphSpec star(std::size_t n) { return {GraphKind::Star, n, 0, 1.0}; }
  static GraphSpec erdos_renyi(std::size_t n, double p) { return {GraphKind::ErdosRenyiConnected, n, 0, p}; }

  /// Round-trips with the command-line syntax: complete:N, torus:WxH, er:N:P, ...
  std::string to_string() const;
};

struct GeneratedGraph
{
  Graph graph;
  std::size_t rejected_draws = 0; ///< disconnected Erdos-Renyi samples discarded
};

/// Deterministic given `seed` (only Erdos-Renyi consumes randomness).
GeneratedGraph generate(const GraphSpec& spec, std::uint64_t seed);

/// Parses the edge-list format: one "u v" pair per line, '#' comments, blank lines ignored.
Graph load_edge_list(std::string_view text);

std::string serialize_edge_list(const Graph& graph);

} // namespace deffuant

#endif
