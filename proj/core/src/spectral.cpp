#include "pstlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "pstlab/error.hpp"

namespace pstlab {

namespace {

[[noreturn]] void eigensolver_failure(const SingleExcitationHamiltonian& h, const char* why) {
  throw EigensolverFailure(std::string("eigensolver failed (") + why + ") for n=" +
                           std::to_string(h.n()) + ", max|H|=" +
                           std::to_string(h.max_abs_entry()));
}

}  // namespace

std::vector<double> SpectralDecomposition::eigenvalues() const {
  std::vector<double> out;
  out.reserve(eigenspaces.size());
  for (const auto& space : eigenspaces) out.push_back(space.eigenvalue);
  return out;
}

double SpectralDecomposition::spectral_radius() const {
  if (eigenspaces.empty()) return 0.0;
  return std::max(std::abs(eigenspaces.front().eigenvalue),
                  std::abs(eigenspaces.back().eigenvalue));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& space : eigenspaces) out += space.eigenvalue * space.projector();
  return out;
}

SpectralDecomposition decompose(const SingleExcitationHamiltonian& h, double grouping_tol) {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real());
    if (solver.info() != Eigen::Success) eigensolver_failure(h, "no convergence");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) eigensolver_failure(h, "no convergence");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }
  if (!values.allFinite() || !vectors.allFinite()) eigensolver_failure(h, "non-finite output");

  SpectralDecomposition dec;
  dec.n = h.n();
  dec.grouping_tol = grouping_tol;
  const double scale = std::max({1.0, std::abs(values(0)), std::abs(values(values.size() - 1))});
  const double threshold = grouping_tol * scale;

  Eigen::Index start = 0;
  const Eigen::Index count = values.size();
  for (Eigen::Index i = 1; i <= count; ++i) {
    if (i == count || values(i) - values(i - 1) > threshold) {
      Eigenspace space;
      space.eigenvalue = values.segment(start, i - start).mean();
      space.basis = vectors.middleCols(start, i - start);
      dec.eigenspaces.push_back(std::move(space));
      start = i;
    }
  }
  return dec;
}

std::vector<SupportComponent> support_components(const SpectralDecomposition& dec, Vertex v) {
  if (v >= dec.n) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range for n=" +
                          std::to_string(dec.n));
  }
  std::vector<SupportComponent> out;
  out.reserve(dec.size());
  for (std::size_t k = 0; k < dec.size(); ++k) {
    SupportComponent c;
    c.eigenspace = k;
    c.projection = dec.eigenspaces[k].project_basis_state(v);
    c.norm = c.projection.norm();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pstlab
