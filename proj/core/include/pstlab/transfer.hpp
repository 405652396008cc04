#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/options.hpp"
#include "pstlab/spectral.hpp"

namespace pstlab {

ComplexVector basis_state(std::size_t n, Vertex v);

// exp(-iHt) state through the spectral decomposition. Throws NotNormalized
// unless |state| = 1 within 1e-10.
ComplexVector evolve(const SpectralDecomposition& dec, const ComplexVector& state, double t);
ComplexVector evolve(const SingleExcitationHamiltonian& h, const ComplexVector& state, double t);

// exp(-iHt) state through a Pade matrix exponential; no eigensolver involved.
ComplexVector evolve_direct(const SingleExcitationHamiltonian& h, const ComplexVector& state,
                            double t);

struct Amplitude {
  Complex amplitude;
  double magnitude = 0.0;
};

// <b| exp(-iHt) |a>.
Amplitude fidelity(const SpectralDecomposition& dec, Vertex a, Vertex b, double t);
Amplitude fidelity(const SingleExcitationHamiltonian& h, Vertex a, Vertex b, double t);

// Per-eigenspace comparison of P_k|a> with P_k|b>.
struct WeightTest {
  bool passed = false;
  std::string reason;
  // arg of the unimodular factor P_k|b> = e^{i phi_k} P_k|a>; nullopt where
  // the eigenspace has no support on a. Real Hamiltonians give 0 or pi.
  std::vector<std::optional<double>> phases;
  std::vector<double> source_norms;
};

WeightTest weight_test(const SpectralDecomposition& dec, Vertex a, Vertex b,
                       const CheckOptions& options = {});

enum class TransferStatus { Perfect, NoTransfer, Undecided };

const char* to_string(TransferStatus status);

struct TransferVerdict {
  TransferStatus status = TransferStatus::NoTransfer;
  std::string reason;
  Vertex source = 0;
  Vertex target = 0;
  double t0 = 0.0;
  // e^{i phi} with exp(-iH t0)|a> = e^{i phi}|b>.
  Complex transfer_phase{1.0, 0.0};
  // Distinct eigenvalues of H, ascending.
  std::vector<double> eigenvalues;
  // Eigenspaces with support on the source, and their phases phi_k.
  std::vector<std::size_t> supported;
  std::vector<double> phases;
  // Gaps lambda_k - lambda_k0 over supported k != k0 and their fit.
  std::vector<double> gaps;
  std::vector<int> parities;
  CommensurabilityResult gap_structure;
  // t0 = r pi / chi on the exact path; 0 when found by the numerical search.
  int r = 0;
  bool exact = false;
  double fidelity_at_t0 = 0.0;
};

// Decides perfect state transfer a -> b. Throws VertexCoincide for a == b
// and IndexOutOfRange for vertices outside H.
TransferVerdict check_transfer(const SingleExcitationHamiltonian& h, Vertex a, Vertex b,
                               const CheckOptions& options = {});
TransferVerdict check_transfer(const SingleExcitationHamiltonian& h,
                               const SpectralDecomposition& dec, Vertex a, Vertex b,
                               const CheckOptions& options = {});

// Throws NotPerfect unless verdict.status is Perfect.
double minimal_transfer_time(const TransferVerdict& verdict);

struct SymmetryOperator {
  ComplexMatrix matrix;
};

// S = sum_supported e^{i phi_k} P_k + sum_unsupported P_k. Unsupported
// eigenspaces get phase 1. Throws PhaseUndefined for a failed weight test.
SymmetryOperator symmetry_operator(const SpectralDecomposition& dec, const WeightTest& weights);
SymmetryOperator symmetry_operator(const SpectralDecomposition& dec, Vertex a, Vertex b,
                                   const CheckOptions& options = {});

struct SymmetryResiduals {
  double unitarity = 0.0;    // |S S^dagger - 1|
  double commutator = 0.0;   // |S H S^dagger - H|
  double mapping = 0.0;      // |S|a> - |b>|
  double involution = 0.0;   // |S^2 - 1|
};

SymmetryResiduals symmetry_residuals(const SymmetryOperator& s,
                                     const SingleExcitationHamiltonian& h, Vertex a, Vertex b);

enum class PhaseClass { PurelyReal, PurelyImaginary };

struct PhaseClassification {
  PhaseClass phase_class = PhaseClass::PurelyReal;
  Complex amplitude;
  // |Im| for PurelyReal, |Re| for PurelyImaginary.
  double residual = 0.0;
};

// Amplitude <m| exp(-iHt) |a> on a bipartite coupling graph is real when m
// has the colour of a and imaginary otherwise. The classification is
// checked, and InvariantViolation thrown if the residual exceeds 1e-9.
// Throws NotBipartite, NonRealHamiltonian, NonzeroDiagonal, EdgeNotInGraph.
PhaseClassification bipartite_phase_class(const Graph& g, const SingleExcitationHamiltonian& h,
                                          Vertex a, Vertex m, double t);

}  // namespace pstlab
