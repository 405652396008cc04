#include "pstlab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pstlab/error.hpp"

namespace pstlab {

namespace {

Graph support_of(const ComplexMatrix& m) {
  std::vector<Edge> edges;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = r + 1; c < m.cols(); ++c) {
      if (m(r, c) != Complex(0.0, 0.0)) {
        edges.push_back({static_cast<Vertex>(r), static_cast<Vertex>(c)});
      }
    }
  }
  return Graph(static_cast<std::size_t>(m.rows()), edges);
}

ComplexMatrix require_square(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw NotHermitian("Hamiltonian must be a non-empty square matrix");
  }
  return m;
}

}  // namespace

IntegerHamiltonian::IntegerHamiltonian(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw NotHermitian("integer Hamiltonian must be a non-empty square matrix");
  }
  if (entries_ != entries_.transpose()) throw NotHermitian("integer Hamiltonian is not symmetric");
}

SingleExcitationHamiltonian IntegerHamiltonian::to_complex() const {
  return SingleExcitationHamiltonian::from_matrix(entries_.cast<double>().cast<Complex>(), 0.0);
}

SingleExcitationHamiltonian::SingleExcitationHamiltonian(ComplexMatrix entries)
    : entries_(std::move(entries)), support_(support_of(entries_)) {
  is_real_ = (entries_.imag().array() == 0.0).all();
}

SingleExcitationHamiltonian SingleExcitationHamiltonian::from_matrix(const ComplexMatrix& m,
                                                                     double hermitian_tol) {
  const ComplexMatrix square = require_square(m);
  if (!square.allFinite()) throw NotHermitian("Hamiltonian has non-finite entries");
  const double scale = std::max(1.0, square.cwiseAbs().maxCoeff());
  const double defect = (square - square.adjoint()).cwiseAbs().maxCoeff();
  if (defect > hermitian_tol * scale) {
    throw NotHermitian("matrix deviates from Hermitian by " + std::to_string(defect));
  }
  ComplexMatrix hermitian = square;
  for (Eigen::Index r = 0; r < square.rows(); ++r) {
    hermitian(r, r) = Complex(square(r, r).real(), 0.0);
    for (Eigen::Index c = r + 1; c < square.cols(); ++c) {
      // Average the two triangles; exact when the input already was Hermitian.
      const Complex upper = defect == 0.0 ? square(r, c) : 0.5 * (square(r, c) + std::conj(square(c, r)));
      hermitian(r, c) = upper;
      hermitian(c, r) = std::conj(upper);
    }
  }
  return SingleExcitationHamiltonian(std::move(hermitian));
}

bool SingleExcitationHamiltonian::has_zero_diagonal() const {
  return (entries_.diagonal().array() == Complex(0.0, 0.0)).all();
}

double SingleExcitationHamiltonian::max_abs_entry() const { return entries_.cwiseAbs().maxCoeff(); }

SingleExcitationHamiltonian SingleExcitationHamiltonian::scaled(double factor) const {
  return SingleExcitationHamiltonian(entries_ * factor);
}

SingleExcitationHamiltonian SingleExcitationHamiltonian::shifted(double delta) const {
  ComplexMatrix m = entries_;
  m.diagonal().array() += delta;
  return SingleExcitationHamiltonian(std::move(m));
}

IntegerHamiltonian adjacency_hamiltonian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1;
    a(e.v, e.u) = 1;
  }
  return IntegerHamiltonian(std::move(a));
}

IntegerHamiltonian laplacian_hamiltonian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  IntMatrix l = IntMatrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    l(e.u, e.v) = -1;
    l(e.v, e.u) = -1;
  }
  for (Vertex v = 0; v < g.n(); ++v) l(v, v) = static_cast<std::int64_t>(g.degree(v));
  return IntegerHamiltonian(std::move(l));
}

SingleExcitationHamiltonian weighted_hamiltonian(const Graph& g, const CouplingMap& couplings,
                                                 const FieldMap& fields) {
  const auto n = static_cast<Eigen::Index>(g.n());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& [key, value] : couplings) {
    if (key.u >= g.n() || key.v >= g.n() || key.u == key.v || !g.has_edge(key.u, key.v)) {
      throw EdgeNotInGraph("coupling on {" + std::to_string(key.u) + "," +
                           std::to_string(key.v) + "} which is not an edge of the graph");
    }
    m(key.u, key.v) = value;
    m(key.v, key.u) = std::conj(value);
  }
  for (const auto& [v, b] : fields) {
    if (v >= g.n()) throw IndexOutOfRange("field on vertex " + std::to_string(v) + " out of range");
    m(v, v) = b;
  }
  return SingleExcitationHamiltonian::from_matrix(m, 0.0);
}

SingleExcitationHamiltonian chain_hamiltonian(std::span<const double> couplings,
                                              std::span<const double> fields) {
  const std::size_t n = couplings.size() + 1;
  if (!fields.empty() && fields.size() != n) {
    throw IndexOutOfRange("chain of " + std::to_string(n) + " sites given " +
                          std::to_string(fields.size()) + " fields");
  }
  const Graph g = path_graph(n);
  CouplingMap j;
  for (std::size_t i = 0; i < couplings.size(); ++i) j[{i, i + 1}] = couplings[i];
  FieldMap b;
  for (std::size_t i = 0; i < fields.size(); ++i) b[i] = fields[i];
  return weighted_hamiltonian(g, j, b);
}

bool check_coupling_identity_5chain(const std::array<double, 4>& couplings) {
  for (double j : couplings) {
    if (!std::isfinite(j) || !(j > 0.0)) {
      throw NonPositiveCoupling("couplings must be finite and strictly positive");
    }
  }
  const double left = couplings[0] * couplings[0] + couplings[1] * couplings[1];
  const double right = couplings[2] * couplings[2] + couplings[3] * couplings[3];
  return std::abs(left - right) <= 1e-12 * std::max(std::abs(left), std::abs(right));
}

std::array<double, 4> asymmetric_five_chain_couplings(double j2) {
  if (!(j2 > 0.0)) throw NonPositiveCoupling("J2 must be strictly positive");
  const double j1_sq = 2.5 - j2 * j2;
  const double j4_sq = 2.5 - 9.0 / (4.0 * j2 * j2);
  if (!(j1_sq > 0.0) || !(j4_sq > 0.0)) {
    throw NonPositiveCoupling("J2 = " + std::to_string(j2) +
                              " leaves J1 or J4 imaginary; need sqrt(9/10) < J2 < sqrt(5/2)");
  }
  return {std::sqrt(j1_sq), j2, 3.0 / (2.0 * j2), std::sqrt(j4_sq)};
}

SingleExcitationHamiltonian standard_chain(std::size_t n) {
  if (n < 2) throw InvalidGraph("standard chain needs at least 2 sites");
  std::vector<double> j(n - 1);
  for (std::size_t k = 1; k < n; ++k) j[k - 1] = std::sqrt(static_cast<double>(k * (n - k)));
  return chain_hamiltonian(j);
}

}  // namespace pstlab
