#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pstlab/graph.hpp"

namespace pstlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

class SingleExcitationHamiltonian;

// Exact symmetric integer matrix: the adjacency (XX model) or Laplacian
// (Heisenberg model) of a graph.
class IntegerHamiltonian {
 public:
  // Throws NotHermitian if the matrix is not square and symmetric.
  explicit IntegerHamiltonian(IntMatrix entries);

  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const IntMatrix& entries() const noexcept { return entries_; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }
  std::int64_t trace() const { return entries_.trace(); }

  SingleExcitationHamiltonian to_complex() const;

  friend bool operator==(const IntegerHamiltonian& a, const IntegerHamiltonian& b) {
    return a.entries_ == b.entries_;
  }

 private:
  IntMatrix entries_;
};

// H1 restricted to the single-excitation subspace: Hermitian N x N with the
// couplings J_nm off the diagonal and on-site fields B_n on it.
class SingleExcitationHamiltonian {
 public:
  // Accepts any square matrix that is Hermitian to within
  // hermitian_tol * max(1, max|entry|), then stores the exact Hermitian part
  // (M + M^dagger) / 2. Throws NotHermitian otherwise.
  static SingleExcitationHamiltonian from_matrix(const ComplexMatrix& m,
                                                 double hermitian_tol = 1e-12);

  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

  // True iff every entry has an exactly zero imaginary part.
  bool is_real() const noexcept { return is_real_; }
  // Edges at the nonzero off-diagonal positions.
  const Graph& support_graph() const noexcept { return support_; }
  bool has_zero_diagonal() const;
  // Largest |entry|, used for scale-relative tolerances.
  double max_abs_entry() const;

  SingleExcitationHamiltonian scaled(double factor) const;
  SingleExcitationHamiltonian shifted(double delta) const;

 private:
  explicit SingleExcitationHamiltonian(ComplexMatrix entries);

  ComplexMatrix entries_;
  bool is_real_ = true;
  Graph support_;
};

IntegerHamiltonian adjacency_hamiltonian(const Graph& g);
IntegerHamiltonian laplacian_hamiltonian(const Graph& g);

// Coupling keyed by an oriented pair: entry (key.u, key.v) receives the value
// and (key.v, key.u) its conjugate. Edges of g without a key stay uncoupled.
using CouplingMap = std::map<Edge, Complex>;
using FieldMap = std::map<Vertex, double>;

// Throws EdgeNotInGraph for a coupling key that is not an edge of g and
// IndexOutOfRange for a field on a missing vertex.
SingleExcitationHamiltonian weighted_hamiltonian(const Graph& g, const CouplingMap& couplings,
                                                 const FieldMap& fields = {});

// Open chain 0-1-...-n with couplings[i] on edge {i, i+1}.
SingleExcitationHamiltonian chain_hamiltonian(std::span<const double> couplings,
                                              std::span<const double> fields = {});

// J1^2 + J2^2 == J3^2 + J4^2 to 1e-12 relative. Throws NonPositiveCoupling
// unless every coupling is finite and strictly positive.
bool check_coupling_identity_5chain(const std::array<double, 4>& couplings);

// Non-mirror-symmetric five-site chain transferring between its second and
// fourth sites at t0 = pi:
//   J1 = sqrt(5/2 - J2^2), J3 = 3 / (2 J2), J4 = sqrt(5/2 - 9 / (4 J2^2)).
// Real only for J2 in (sqrt(9/10), sqrt(5/2)); throws NonPositiveCoupling
// outside that window.
std::array<double, 4> asymmetric_five_chain_couplings(double j2);

// Chain with J_n = sqrt(n (N - n)), n = 1..N-1: end-to-end transfer at pi/2.
SingleExcitationHamiltonian standard_chain(std::size_t n);

}  // namespace pstlab
