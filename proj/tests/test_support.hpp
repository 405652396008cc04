#pragma once

#include <vector>

#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/search.hpp"

namespace pstlab::testing {

// Every connected class on 1..max_n vertices, smallest first.
inline std::vector<Graph> connected_graphs_up_to(std::size_t max_n) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto batch = enumerate_connected_graphs(n);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

inline Eigen::MatrixXi adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1;
  return a;
}

inline Eigen::MatrixXi kronecker(const Eigen::MatrixXi& x, const Eigen::MatrixXi& y) {
  Eigen::MatrixXi out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

}  // namespace pstlab::testing
