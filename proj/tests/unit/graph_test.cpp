#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "deffuant/errors.hpp"
#include "deffuant/graph.hpp"

using namespace deffuant;

namespace
{

// Torus edges by enumerating each vertex's right and down neighbour, deduplicated.
std::size_t brute_torus_edges(std::size_t w, std::size_t h)
{
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t v = y * w + x;
      for (std::size_t u : {y * w + (x + 1) % w, ((y + 1) % h) * w + x}) {
        edges.insert(std::minmax(u, v));
      }
    }
  }
  return edges.size();
}

} // namespace

TEST(Validate, Examples)
{
  EXPECT_NO_THROW(Graph(2, {{0, 1}}));
  try {
    Graph(3, {{0, 1}});
    FAIL();
  } catch (const ConnectivityError& e) {
    EXPECT_EQ(e.unreachable_vertex(), 2u);
  }
  EXPECT_THROW(Graph(1, {{0, 0}}), StructureError);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), StructureError);
  EXPECT_THROW(Graph(2, {{0, 2}}), StructureError);
}

TEST(Generate, EdgeCounts)
{
  EXPECT_EQ(generate(GraphSpec::complete(4), 0).graph.edge_count(), 6u);
  EXPECT_EQ(generate(GraphSpec::path(2), 0).graph.edge_count(), 1u);
  EXPECT_EQ(generate(GraphSpec::cycle(10), 0).graph.edge_count(), 10u);
  EXPECT_EQ(generate(GraphSpec::star(9), 0).graph.edge_count(), 8u);
  EXPECT_EQ(brute_torus_edges(3, 3), 18u);
  for (std::size_t w : {3, 4, 5}) {
    for (std::size_t h : {3, 4, 7}) {
      EXPECT_EQ(generate(GraphSpec::torus(w, h), 0).graph.edge_count(), brute_torus_edges(w, h));
    }
  }
}

TEST(Generate, TorusIsFourRegular)
{
  const Graph g = generate(GraphSpec::torus(4, 4), 0).graph;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    EXPECT_EQ(g.degree(v), 4u);
  }
}

TEST(Generate, ParameterErrors)
{
  EXPECT_THROW(generate(GraphSpec::cycle(2), 0), Error);
  EXPECT_THROW(generate(GraphSpec::torus(2, 3), 0), Error);
  EXPECT_THROW(generate(GraphSpec::erdos_renyi(10, 1.5), 0), Error);
  EXPECT_THROW(generate(GraphSpec::complete(0), 0), Error);
}

TEST(Generate, ErdosRenyiIsConnectedAndSeeded)
{
  const auto a = generate(GraphSpec::erdos_renyi(12, 0.3), 5);
  const auto b = generate(GraphSpec::erdos_renyi(12, 0.3), 5);
  EXPECT_NO_THROW(validate(a.graph));
  EXPECT_TRUE(a.graph.same_structure(b.graph));
  EXPECT_EQ(a.rejected_draws, b.rejected_draws);
}

TEST(Graph, IncidenceIndex)
{
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_NO_THROW(validate(g));
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.find_edge(2, 1), std::optional<EdgeId>(1));
  EXPECT_FALSE(g.find_edge(0, 2).has_value());
  for (Vertex v = 0; v < 4; ++v) {
    for (EdgeId id : g.incident_edges(v)) {
      EXPECT_TRUE(g.edge(id).u == v || g.edge(id).v == v);
    }
  }
}

TEST(EdgeList, Examples)
{
  const Graph g = load_edge_list("0 1\n1 2\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_THROW(load_edge_list("0 1\n0 1\n"), StructureError);
  try {
    load_edge_list("0 2\n");
    FAIL();
  } catch (const ConnectivityError& e) {
    EXPECT_EQ(e.unreachable_vertex(), 1u);
  }
}

TEST(EdgeList, CommentsAndParseErrors)
{
  EXPECT_EQ(load_edge_list("# header\n\n0 1\n  # note\n1 2\n").edge_count(), 2u);
  try {
    load_edge_list("0 1\n1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EdgeList, RoundTrip)
{
  const Graph g = generate(GraphSpec::erdos_renyi(15, 0.25), 9).graph;
  EXPECT_TRUE(load_edge_list(serialize_edge_list(g)).same_structure(g));
}

TEST(GraphSpec, ToString)
{
  EXPECT_EQ(GraphSpec::torus(4, 5).to_string(), "torus:4x5");
  EXPECT_EQ(GraphSpec::complete(10).to_string(), "complete:10");
}
