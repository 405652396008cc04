#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/options.hpp"
#include "pstlab/spectral.hpp"
#include "pstlab/transfer.hpp"

namespace pstlab {

struct ZeroScanOptions {
  std::size_t grid = 10'000;
  double tol = 1e-8;
};

// Times t in the open interval (0, t0) with <a|exp(-iHt)|a> = 0, found by
// locating grid minima of |f| and refining each by golden section. Both the
// real and the imaginary part must vanish (|f| <= tol).
std::vector<double> autocorrelation_zeros(const SpectralDecomposition& dec, Vertex a, double t0,
                                          const ZeroScanOptions& scan = {});
std::vector<double> autocorrelation_zeros(const SingleExcitationHamiltonian& h, Vertex a,
                                          double t0, const ZeroScanOptions& scan = {});

struct RateReport {
  std::size_t distance = 0;              // D, on the support graph of H
  std::size_t supported_eigenspaces = 0; // M
  std::size_t zero_count = 0;            // l
  std::vector<double> zero_times;
  double t0 = 0.0;
  bool bound_satisfied = false;          // 2l + D <= M
  double ml_lower_bound = 0.0;           // (l + 1) pi / (4 sum_j |J_aj|)
};

// Throws NotPerfect unless a -> b is a perfect transfer.
RateReport rate_report(const SingleExcitationHamiltonian& h, Vertex a, Vertex b,
                       const CheckOptions& options = {}, const ZeroScanOptions& scan = {});
RateReport rate_report(const SingleExcitationHamiltonian& h, const SpectralDecomposition& dec,
                       const TransferVerdict& verdict, const ZeroScanOptions& scan = {});

// D J <= M - 1 and M <= N. False for any non-positive argument.
bool routing_bound_check(long long distance, long long targets, long long eigenspaces,
                         long long n);

struct RoutingScan {
  Vertex source = 0;
  // Perfect verdicts, ordered by target.
  std::vector<TransferVerdict> perfect;
};

// check_transfer(h, a, c) for every c != a. Throws NonRealHamiltonian for a
// complex H and InvariantViolation if more than one target is reachable.
RoutingScan routing_impossibility_scan(const SingleExcitationHamiltonian& h, Vertex a,
                                       const CheckOptions& options = {});

struct MoharBound {
  double alpha = 0.0;
  std::size_t bound = 0;
};

struct LaplacianBoundsReport {
  std::size_t max_degree = 0;       // d
  std::size_t two_d = 0;
  std::size_t distinct_eigenvalues = 0;  // k
  std::size_t k_minus_1 = 0;
  std::size_t diameter = 0;         // D
  bool integral = false;
  double algebraic_connectivity = 0.0;
  std::vector<MoharBound> mohar;
  // The closed form needs lambda_2 >= 1 (guaranteed for a connected graph
  // with integral Laplacian) and N >= 3; otherwise it is reported only.
  bool mohar_applicable = false;
  // D <= 2d is a consequence only for a perfect-transfer source supported
  // on every eigenspace; otherwise it is reported only.
  bool two_d_asserted = false;
  bool all_satisfied = false;
};

inline const std::vector<double>& default_mohar_alphas() {
  static const std::vector<double> alphas{2.0, 2.718281828459045, 4.0};
  return alphas;
}

// Throws Disconnected for a disconnected graph.
LaplacianBoundsReport laplacian_diameter_bounds(const Graph& g,
                                                const std::vector<double>& alphas = default_mohar_alphas(),
                                                bool full_support_transfer = false);

// e^{-i t0 n} = 1 to within 1e-8. Throws DegenerateInput unless t0 > 0 and n >= 2.
bool complement_pst_condition(double t0, std::size_t n);

// Every eigenspace of dec has support on v.
bool full_eigenspace_support(const SpectralDecomposition& dec, Vertex v, double support_tol = 1e-9);

}  // namespace pstlab
