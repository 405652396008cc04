#include <algorithm>
#include <array>
#include <set>

#include "pstlab/error.hpp"
#include "pstlab/search.hpp"

namespace pstlab {

namespace {

constexpr std::size_t kMaxCanonicalOrder = 11;

// Branch-and-bound over relabelings. Column j of the upper triangle depends
// only on the images of positions 0..j, so a partial labeling whose prefix
// already exceeds the best code can be abandoned.
class Canonicaliser {
 public:
  explicit Canonicaliser(const Graph& g) : n_(g.n()), bits_(n_ * (n_ - 1) / 2) {
    for (const auto& e : g.edges()) {
      adj_[e.u] |= 1u << e.v;
      adj_[e.v] |= 1u << e.u;
    }
  }

  std::pair<std::uint64_t, std::array<Vertex, kMaxCanonicalOrder>> run() {
    search(0, 0, 0, true);
    return {best_, best_perm_};
  }

 private:
  void search(std::size_t pos, std::uint64_t prefix, std::size_t len, bool tied) {
    if (pos == n_) {
      if (!have_best_ || prefix < best_) {
        best_ = prefix;
        best_perm_ = perm_;
        have_best_ = true;
      }
      return;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (used_ & (1u << v)) continue;
      perm_[pos] = v;
      std::uint64_t next = prefix;
      for (std::size_t i = 0; i < pos; ++i) next = (next << 1) | ((adj_[perm_[i]] >> v) & 1u);
      const std::size_t next_len = len + pos;
      bool next_tied = tied;
      if (have_best_ && tied) {
        const std::uint64_t best_prefix = best_ >> (bits_ - next_len);
        if (next > best_prefix) continue;
        next_tied = next == best_prefix;
      }
      used_ |= 1u << v;
      search(pos + 1, next, next_len, next_tied || !have_best_);
      used_ &= ~(1u << v);
    }
  }

  std::size_t n_;
  std::size_t bits_;
  std::array<std::uint32_t, kMaxCanonicalOrder> adj_{};
  std::array<Vertex, kMaxCanonicalOrder> perm_{};
  std::array<Vertex, kMaxCanonicalOrder> best_perm_{};
  std::uint32_t used_ = 0;
  std::uint64_t best_ = 0;
  bool have_best_ = false;
};

void check_canonical_order(std::size_t n) {
  if (n > kMaxCanonicalOrder) {
    throw NTooLarge("canonical labeling supports n <= " + std::to_string(kMaxCanonicalOrder));
  }
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  check_canonical_order(g.n());
  return Canonicaliser(g).run().first;
}

Graph canonical_form(const Graph& g) {
  check_canonical_order(g.n());
  return graph_from_code(g.n(), canonical_code(g));
}

Graph graph_from_code(std::size_t n, std::uint64_t code) {
  check_canonical_order(n);
  const std::size_t bits = n * (n - 1) / 2;
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      if ((code >> (bits - 1 - k)) & 1u) edges.push_back({i, j});
    }
  }
  return Graph(n, edges);
}

std::vector<Graph> enumerate_connected_graphs(std::size_t n) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  if (n > kMaxEnumerationOrder) {
    throw NTooLarge("enumeration is limited to n <= 7; feed larger graphs as graph6");
  }
  // Grow isomorphism classes one edge at a time.
  std::set<std::uint64_t> all{0};
  std::set<std::uint64_t> level{0};
  const std::size_t max_edges = n * (n - 1) / 2;
  for (std::size_t m = 1; m <= max_edges; ++m) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : level) {
      const Graph g = graph_from_code(n, code);
      for (Vertex v = 1; v < n; ++v) {
        for (Vertex u = 0; u < v; ++u) {
          if (g.has_edge(u, v)) continue;
          std::vector<Edge> edges(g.edges());
          edges.push_back({u, v});
          next.insert(canonical_code(Graph(n, edges)));
        }
      }
    }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }

  std::vector<Graph> out;
  for (std::uint64_t code : all) {
    Graph g = graph_from_code(n, code);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace pstlab
