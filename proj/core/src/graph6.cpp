#include <string>

#include "pstlab/error.hpp"
#include "pstlab/graph.hpp"

namespace pstlab {

namespace {

constexpr int kOffset = 63;
constexpr std::size_t kMaxVertices = 62;

std::size_t pair_bits(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw MalformedGraph6("empty graph6 string");
  for (char c : text) {
    const int b = static_cast<unsigned char>(c);
    if (b < kOffset || b > 126) {
      throw MalformedGraph6("byte " + std::to_string(b) + " outside graph6 range [63,126]");
    }
  }
  const std::size_t n = static_cast<unsigned char>(text[0]) - kOffset;
  if (n == 0) throw MalformedGraph6("graph6 with zero vertices is not a valid graph here");
  if (n > kMaxVertices) throw MalformedGraph6("only n < 63 is supported");

  const std::size_t bits = pair_bits(n);
  const std::size_t expected = 1 + (bits + 5) / 6;
  if (text.size() != expected) {
    throw MalformedGraph6("expected " + std::to_string(expected) + " bytes for n=" +
                          std::to_string(n) + ", got " + std::to_string(text.size()));
  }

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex v = 1; v < n; ++v) {
    for (Vertex u = 0; u < v; ++u, ++k) {
      const int chunk = static_cast<unsigned char>(text[1 + k / 6]) - kOffset;
      if ((chunk >> (5 - k % 6)) & 1) edges.push_back({u, v});
    }
  }
  for (; k < (expected - 1) * 6; ++k) {
    const int chunk = static_cast<unsigned char>(text[1 + k / 6]) - kOffset;
    if ((chunk >> (5 - k % 6)) & 1) throw MalformedGraph6("nonzero padding bits");
  }
  return Graph(n, edges);
}

std::string encode_graph6(const Graph& g) {
  const std::size_t n = g.n();
  if (n > kMaxVertices) throw MalformedGraph6("only n < 63 is supported");
  const std::size_t bits = pair_bits(n);
  std::vector<int> chunks((bits + 5) / 6, 0);
  std::size_t k = 0;
  for (Vertex v = 1; v < n; ++v) {
    for (Vertex u = 0; u < v; ++u, ++k) {
      if (g.has_edge(u, v)) chunks[k / 6] |= 1 << (5 - k % 6);
    }
  }
  std::string out(1, static_cast<char>(kOffset + n));
  for (int c : chunks) out.push_back(static_cast<char>(kOffset + c));
  return out;
}

}  // namespace pstlab
