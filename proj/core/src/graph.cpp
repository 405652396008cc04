#include "pstlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "pstlab/error.hpp"

namespace pstlab {

Graph::Graph(std::size_t n) : Graph(n, std::span<const Edge>{}) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  build(std::vector<Edge>(edges.begin(), edges.end()));
}

Graph::Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : n_(n) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v] : edges) list.push_back({u, v});
  build(std::move(list));
}

void Graph::build(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u >= n_ || e.v >= n_) {
      throw InvalidGraph("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         "} out of range for n=" + std::to_string(n_));
    }
    if (e.u == e.v) throw InvalidGraph("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(n_, {});
  bitmap_.assign(n_ * n_, 0);
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
    bitmap_[e.u * n_ + e.v] = 1;
    bitmap_[e.v * n_ + e.u] = 1;
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

void Graph::check_vertex(Vertex v) const {
  if (v >= n_) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range for n=" +
                          std::to_string(n_));
  }
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  return bitmap_[u * n_ + v] != 0;
}

std::size_t Graph::degree(Vertex v) const { return neighbors(v).size(); }

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t v = 0; v < n_; ++v) out[v] = adjacency_[v].size();
  return out;
}

bool Graph::is_regular() const noexcept {
  for (const auto& list : adjacency_) {
    if (list.size() != adjacency_.front().size()) return false;
  }
  return true;
}

bool Graph::is_connected() const {
  const auto dist = distances_from(*this, 0);
  return std::all_of(dist.begin(), dist.end(), [](const auto& d) { return d.has_value(); });
}

std::vector<std::optional<std::size_t>> distances_from(const Graph& g, Vertex source) {
  if (source >= g.n()) {
    throw IndexOutOfRange("vertex " + std::to_string(source) + " out of range for n=" +
                          std::to_string(g.n()));
  }
  std::vector<std::optional<std::size_t>> dist(g.n());
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v) {
  if (v >= g.n()) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range for n=" +
                          std::to_string(g.n()));
  }
  return distances_from(g, u)[v];
}

std::optional<std::size_t> diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    for (const auto& d : distances_from(g, s)) {
      if (!d) return std::nullopt;
      best = std::max(best, *d);
    }
  }
  return best;
}

BipartiteColoring bipartite_coloring(const Graph& g) {
  BipartiteColoring result;
  result.colors.assign(g.n(), Color::Red);
  result.valid = true;
  std::vector<bool> seen(g.n(), false);
  for (Vertex root = 0; root < g.n(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      const Color other = result.colors[u] == Color::Red ? Color::Blue : Color::Red;
      for (Vertex w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          result.colors[w] = other;
          queue.push_back(w);
        } else if (result.colors[w] == result.colors[u]) {
          result.valid = false;
        }
      }
    }
  }
  return result;
}

namespace {

enum class ProductKind { Cartesian, Conjunction, Strong };

Graph product(const Graph& g1, const Graph& g2, ProductKind kind) {
  const std::size_t n2 = g2.n();
  const std::size_t n = g1.n() * n2;
  std::vector<Edge> edges;
  for (Vertex p = 0; p < n; ++p) {
    for (Vertex q = p + 1; q < n; ++q) {
      const Vertex i1 = p / n2, j1 = p % n2;
      const Vertex i2 = q / n2, j2 = q % n2;
      const bool left_edge = g1.has_edge(i1, i2);
      const bool right_edge = g2.has_edge(j1, j2);
      const bool cartesian = (i1 == i2 && right_edge) || (j1 == j2 && left_edge);
      const bool tensor = left_edge && right_edge;
      bool adjacent = false;
      switch (kind) {
        case ProductKind::Cartesian: adjacent = cartesian; break;
        case ProductKind::Conjunction: adjacent = tensor; break;
        case ProductKind::Strong: adjacent = cartesian || tensor; break;
      }
      if (adjacent) edges.push_back({p, q});
    }
  }
  return Graph(n, edges);
}

bool is_perfect_square(std::uint64_t x) {
  std::uint64_t lo = 0, hi = std::min<std::uint64_t>(x, 1ULL << 32);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (mid * mid <= x) lo = mid; else hi = mid - 1;
  }
  return lo * lo == x;
}

}  // namespace

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  return product(g1, g2, ProductKind::Cartesian);
}

Graph conjunction(const Graph& g1, const Graph& g2) {
  return product(g1, g2, ProductKind::Conjunction);
}

Graph strong_product(const Graph& g1, const Graph& g2) {
  return product(g1, g2, ProductKind::Strong);
}

JoinResult join(const Graph& g1, const Graph& g2) {
  const std::size_t n1 = g1.n(), n2 = g2.n();
  std::vector<Edge> edges(g1.edges());
  for (const auto& e : g2.edges()) edges.push_back({e.u + n1, e.v + n1});
  for (Vertex u = 0; u < n1; ++u) {
    for (Vertex v = 0; v < n2; ++v) edges.push_back({u, n1 + v});
  }
  JoinResult result{Graph(n1 + n2, edges), false};
  if (g1.is_regular() && g2.is_regular()) {
    const auto d1 = static_cast<std::int64_t>(g1.max_degree());
    const auto d2 = static_cast<std::int64_t>(g2.max_degree());
    const auto diff = static_cast<std::uint64_t>((d1 - d2) * (d1 - d2));
    result.square_ok = is_perfect_square(diff + 4 * static_cast<std::uint64_t>(n1 * n2));
  }
  return result;
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v) {
      if (!g.has_edge(u, v)) edges.push_back({u, v});
    }
  }
  return Graph(g.n(), edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidGraph("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, edges);
}

Graph hypercube(std::size_t dimension) {
  Graph g(1);
  const Graph k2 = complete_graph(2);
  for (std::size_t i = 0; i < dimension; ++i) g = cartesian_product(g, k2);
  return g;
}

}  // namespace pstlab
