#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pstlab/hamiltonian.hpp"

namespace pstlab {

using BigInt = boost::multiprecision::cpp_int;

struct Eigenspace {
  double eigenvalue = 0.0;
  // Orthonormal basis, one column per vector.
  ComplexMatrix basis;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis.cols()); }
  ComplexMatrix projector() const { return basis * basis.adjoint(); }
  // P|v> for the basis state |v>.
  ComplexVector project_basis_state(std::size_t v) const {
    return basis * basis.row(static_cast<Eigen::Index>(v)).adjoint();
  }
};

// Distinct eigenvalues in increasing order, each with an orthonormal basis of
// its eigenspace. Eigenvalues closer than grouping_tol * max(1, spectral
// radius) are merged and reported as their mean.
struct SpectralDecomposition {
  std::size_t n = 0;
  double grouping_tol = 0.0;
  std::vector<Eigenspace> eigenspaces;

  std::size_t size() const noexcept { return eigenspaces.size(); }
  std::vector<double> eigenvalues() const;
  double spectral_radius() const;
  // Sum over k of lambda_k P_k.
  ComplexMatrix reconstruct() const;
};

inline constexpr double kDefaultGroupingTol = 1e-8;

// Throws EigensolverFailure if the dense Hermitian eigensolver does not
// converge or returns non-finite values.
SpectralDecomposition decompose(const SingleExcitationHamiltonian& h,
                                double grouping_tol = kDefaultGroupingTol);

struct SupportComponent {
  std::size_t eigenspace = 0;
  ComplexVector projection;
  double norm = 0.0;
};

// P_k|v> and its norm for every eigenspace k, in eigenspace order.
std::vector<SupportComponent> support_components(const SpectralDecomposition& dec, Vertex v);

// Coefficients c_0..c_n (ascending powers) of det(lambda I - H); c_n = 1.
std::vector<BigInt> integer_char_poly(const IntegerHamiltonian& h);

struct IntegralSpectrum {
  bool integral = false;
  // Ascending, with multiplicity; empty unless integral.
  std::vector<std::int64_t> roots;
};

// Exact: splits the characteristic polynomial by trial division with the
// integer candidates permitted by the rational root theorem.
IntegralSpectrum is_integral_spectrum(const IntegerHamiltonian& h);

struct CommensurabilityResult {
  bool commensurable = false;
  double chi = 0.0;
  std::vector<std::int64_t> integers;
  std::int64_t max_denominator = 0;
  // max_k |value_k - chi * z_k| of the reported fit.
  double residual = 0.0;
};

inline constexpr std::int64_t kDefaultMaxDenominator = 1'000'000;
inline constexpr double kDefaultResidualTol = 1e-9;

// Finds chi > 0 and coprime integers z_k with value_k = chi z_k by
// rationalising value_k / value_0 with continued fractions (denominators at
// most max_denominator). A fit is accepted only if every residual is below
// residual_tol both absolutely and in units of chi. Throws DegenerateInput
// for an empty list or any value <= residual_tol.
CommensurabilityResult real_gcd(std::span<const double> values,
                                std::int64_t max_denominator = kDefaultMaxDenominator,
                                double residual_tol = kDefaultResidualTol);

}  // namespace pstlab
