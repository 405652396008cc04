#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pstlab {

using Vertex = std::size_t;

// Unordered vertex pair, stored with first < second.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on vertices 0..n-1.
//
// Edges are kept as a sorted, duplicate-free list alongside a dense
// adjacency bitmap, so both iteration and has_edge() are cheap at the
// sizes this library targets (n well below a thousand).
class Graph {
 public:
  // Edgeless graph on n vertices.
  explicit Graph(std::size_t n);

  // Throws InvalidGraph on self-loops, out-of-range endpoints or n == 0.
  // Repeated edges (in either orientation) collapse into one.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const;

  bool has_edge(Vertex u, Vertex v) const;
  std::size_t degree(Vertex v) const;
  std::size_t max_degree() const noexcept;
  std::vector<std::size_t> degrees() const;
  bool is_regular() const noexcept;
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build(std::vector<Edge> edges);
  void check_vertex(Vertex v) const;

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> bitmap_;
};

// Shortest-path length by BFS; nullopt when u and v lie in different
// components. Throws IndexOutOfRange.
std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v);

// All BFS distances from one source; unreachable vertices are nullopt.
std::vector<std::optional<std::size_t>> distances_from(const Graph& g, Vertex source);

// Largest pairwise distance, nullopt for a disconnected graph.
std::optional<std::size_t> diameter(const Graph& g);

enum class Color : std::uint8_t { Red, Blue };

struct BipartiteColoring {
  std::vector<Color> colors;
  bool valid = false;
};

// Deterministic BFS 2-colouring: the lowest vertex of every component is Red.
// valid is false iff the graph contains an odd cycle.
BipartiteColoring bipartite_coloring(const Graph& g);

// Product vertex (i, j) is numbered i * g2.n() + j in all three products,
// so the adjacency matrices are the literal Kronecker expressions
// A1 (x) I + I (x) A2, A1 (x) A2 and their sum.
Graph cartesian_product(const Graph& g1, const Graph& g2);
Graph conjunction(const Graph& g1, const Graph& g2);
Graph strong_product(const Graph& g1, const Graph& g2);

struct JoinResult {
  Graph graph;
  // Both inputs regular and (d1 - d2)^2 + 4 n1 n2 a perfect square.
  bool square_ok = false;
};

// Disjoint union plus every cross edge; vertices of g2 follow those of g1.
JoinResult join(const Graph& g1, const Graph& g2);

Graph complement(const Graph& g);

// graph6 (McKay) encoding, restricted to n < 63.
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

// Named families used throughout tests, examples and the CLI.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph hypercube(std::size_t dimension);

}  // namespace pstlab
