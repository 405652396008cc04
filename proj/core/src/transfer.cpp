#include "pstlab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "pstlab/error.hpp"

namespace pstlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range for n=" +
                          std::to_string(n));
  }
}

void check_normalized(const ComplexVector& state) {
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw NotNormalized("state norm " + std::to_string(norm) + " is not 1");
  }
}

// arg() folded into (-pi, pi], with values within 1e-12 of -pi sent to pi.
double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi + 1e-12) a += 2.0 * kPi;
  return a;
}

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Coefficients c_k = <b|P_k|a>, so that <b|exp(-iHt)|a> = sum c_k e^{-i lambda_k t}.
struct AmplitudeSeries {
  std::vector<double> lambda;
  std::vector<Complex> coeff;

  Complex operator()(double t) const {
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < lambda.size(); ++k) sum += coeff[k] * std::exp(-kI * (lambda[k] * t));
    return sum;
  }
};

AmplitudeSeries amplitude_series(const SpectralDecomposition& dec, Vertex a, Vertex b) {
  AmplitudeSeries s;
  for (const auto& space : dec.eigenspaces) {
    s.lambda.push_back(space.eigenvalue);
    s.coeff.push_back(space.project_basis_state(a)(static_cast<Eigen::Index>(b)));
  }
  return s;
}

// Golden-section maximisation of |f| on [lo, hi].
template <typename F>
std::pair<double, double> maximise_magnitude(const F& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = std::abs(f(x1));
  double f2 = std::abs(f(x2));
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = std::abs(f(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = std::abs(f(x1));
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

TransferVerdict no_transfer(TransferVerdict v, std::string reason) {
  v.status = TransferStatus::NoTransfer;
  v.reason = std::move(reason);
  return v;
}

// Confirms a candidate through the matrix exponential and fills the
// fidelity; demotes to Undecided if the candidate does not hold up.
TransferVerdict confirm(TransferVerdict v, const SingleExcitationHamiltonian& h,
                        const CheckOptions& options) {
  const ComplexVector out = evolve_direct(h, basis_state(h.n(), v.source), v.t0);
  const Complex amp = out(static_cast<Eigen::Index>(v.target));
  v.fidelity_at_t0 = std::abs(amp);
  if (v.fidelity_at_t0 >= 1.0 - options.fidelity_tol) {
    v.status = TransferStatus::Perfect;
    v.reason.clear();
  } else {
    v.status = TransferStatus::Undecided;
    v.reason = "candidate t0=" + format_value(v.t0) + " failed direct evolution (fidelity " +
               format_value(v.fidelity_at_t0) + ")";
  }
  return v;
}

TransferVerdict numerical_search(TransferVerdict v, const SingleExcitationHamiltonian& h,
                                 const SpectralDecomposition& dec, const CheckOptions& options) {
  const AmplitudeSeries series = amplitude_series(dec, v.source, v.target);
  const double spread = dec.eigenspaces.back().eigenvalue - dec.eigenspaces.front().eigenvalue;
  const double horizon = options.t_max / std::max(0.5 * spread, 1e-12);
  const std::size_t grid = std::max<std::size_t>(options.scan_grid, 16);
  const double step = horizon / static_cast<double>(grid);

  std::vector<double> mag(grid + 2, 0.0);
  for (std::size_t j = 1; j <= grid; ++j) mag[j] = std::abs(series(step * static_cast<double>(j)));

  std::vector<std::size_t> peaks;
  for (std::size_t j = 1; j <= grid; ++j) {
    if (mag[j] >= mag[j - 1] && mag[j] >= mag[j + 1]) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto x, auto y) { return mag[x] > mag[y]; });
  if (peaks.size() > 8) peaks.resize(8);

  double best_t = 0.0, best_mag = -1.0;
  for (std::size_t j : peaks) {
    const double lo = step * static_cast<double>(j - 1);
    const double hi = step * static_cast<double>(j + 1);
    const auto [t, m] = maximise_magnitude(series, std::max(lo, 1e-300), hi);
    if (m > best_mag + 1e-15 || (std::abs(m - best_mag) <= 1e-15 && t < best_t)) {
      best_t = t;
      best_mag = m;
    }
  }

  if (best_mag < 1.0 - options.fidelity_tol) {
    v.status = TransferStatus::Undecided;
    v.reason = "no perfect transfer found up to t=" + format_value(horizon) +
               " (best fidelity " + format_value(best_mag) + ")";
    return v;
  }
  v.t0 = best_t;
  const Complex amp = series(best_t);
  v.transfer_phase = amp / std::abs(amp);
  return confirm(std::move(v), h, options);
}

}  // namespace

ComplexVector basis_state(std::size_t n, Vertex v) {
  check_vertex(n, v);
  ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(v)) = 1.0;
  return e;
}

ComplexVector evolve(const SpectralDecomposition& dec, const ComplexVector& state, double t) {
  check_normalized(state);
  ComplexVector out = ComplexVector::Zero(state.size());
  for (const auto& space : dec.eigenspaces) {
    const ComplexVector coords = space.basis.adjoint() * state;
    out += std::exp(-kI * (space.eigenvalue * t)) * (space.basis * coords);
  }
  return out;
}

ComplexVector evolve(const SingleExcitationHamiltonian& h, const ComplexVector& state, double t) {
  return evolve(decompose(h), state, t);
}

ComplexVector evolve_direct(const SingleExcitationHamiltonian& h, const ComplexVector& state,
                            double t) {
  check_normalized(state);
  const ComplexMatrix generator = (-kI * t) * h.matrix();
  const ComplexMatrix propagator = generator.exp();
  return propagator * state;
}

Amplitude fidelity(const SpectralDecomposition& dec, Vertex a, Vertex b, double t) {
  check_vertex(dec.n, a);
  check_vertex(dec.n, b);
  const Complex amp = amplitude_series(dec, a, b)(t);
  return {amp, std::abs(amp)};
}

Amplitude fidelity(const SingleExcitationHamiltonian& h, Vertex a, Vertex b, double t) {
  return fidelity(decompose(h), a, b, t);
}

WeightTest weight_test(const SpectralDecomposition& dec, Vertex a, Vertex b,
                       const CheckOptions& options) {
  check_vertex(dec.n, a);
  check_vertex(dec.n, b);
  WeightTest out;
  out.passed = true;
  for (const auto& space : dec.eigenspaces) {
    const ComplexVector v = space.project_basis_state(a);
    const ComplexVector w = space.project_basis_state(b);
    const double nv = v.norm();
    const double nw = w.norm();
    out.source_norms.push_back(nv);
    if (nv <= options.support_tol) {
      out.phases.push_back(std::nullopt);
      if (nw > options.support_tol && out.passed) {
        out.passed = false;
        out.reason = "weight mismatch at eigenvalue " + format_value(space.eigenvalue) +
                     " (target supported, source not)";
      }
      continue;
    }
    const Complex c = v.dot(w) / (nv * nv);  // dot() conjugates its left operand
    const double deviation = (w - c * v).norm();
    if ((std::abs(nw - nv) > options.proportionality_tol ||
         deviation > options.proportionality_tol) && out.passed) {
      out.passed = false;
      out.reason = "weight mismatch at eigenvalue " + format_value(space.eigenvalue);
    }
    out.phases.push_back(principal_arg(c));
  }
  return out;
}

const char* to_string(TransferStatus status) {
  switch (status) {
    case TransferStatus::Perfect: return "Perfect";
    case TransferStatus::NoTransfer: return "NoTransfer";
    case TransferStatus::Undecided: return "Undecided";
  }
  return "?";
}

TransferVerdict check_transfer(const SingleExcitationHamiltonian& h, Vertex a, Vertex b,
                               const CheckOptions& options) {
  check_vertex(h.n(), a);
  check_vertex(h.n(), b);
  if (a == b) throw VertexCoincide("source and target coincide");
  return check_transfer(h, decompose(h, options.grouping_tol), a, b, options);
}

TransferVerdict check_transfer(const SingleExcitationHamiltonian& h,
                               const SpectralDecomposition& dec, Vertex a, Vertex b,
                               const CheckOptions& options) {
  check_vertex(h.n(), a);
  check_vertex(h.n(), b);
  if (a == b) throw VertexCoincide("source and target coincide");

  TransferVerdict v;
  v.source = a;
  v.target = b;
  v.eigenvalues = dec.eigenvalues();

  const WeightTest weights = weight_test(dec, a, b, options);
  for (std::size_t k = 0; k < dec.size(); ++k) {
    if (weights.phases[k]) {
      v.supported.push_back(k);
      v.phases.push_back(*weights.phases[k]);
    }
  }
  if (!weights.passed) return no_transfer(std::move(v), weights.reason);
  if (v.supported.size() < 2) return no_transfer(std::move(v), "single supported eigenspace");

  const std::size_t k0 = v.supported.front();
  const double lambda0 = dec.eigenspaces[k0].eigenvalue;
  const double phi0 = v.phases.front();

  bool quantised = true;
  for (std::size_t i = 1; i < v.supported.size(); ++i) {
    v.gaps.push_back(dec.eigenspaces[v.supported[i]].eigenvalue - lambda0);
    const double s = (phi0 - v.phases[i]) / kPi;
    const double nearest = std::round(s);
    if (std::abs(s - nearest) > options.phase_tol) quantised = false;
    v.parities.push_back(static_cast<int>(((static_cast<long long>(nearest) % 2) + 2) % 2));
  }

  if (!quantised) {
    v.parities.clear();
    if (h.is_real()) return no_transfer(std::move(v), "non-real phase on real Hamiltonian");
    return numerical_search(std::move(v), h, dec, options);
  }

  v.exact = true;
  v.gap_structure = real_gcd(v.gaps, options.max_denominator, options.residual_tol);
  if (!v.gap_structure.commensurable) {
    return no_transfer(std::move(v), "incommensurable eigenvalue gaps");
  }
  const auto& z = v.gap_structure.integers;
  bool odd_match = true, all_even = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (((z[i] % 2) + 2) % 2 != v.parities[i]) odd_match = false;
    if (v.parities[i] != 0) all_even = false;
  }
  if (odd_match) {
    v.r = 1;
  } else if (all_even) {
    v.r = 2;
  } else {
    return no_transfer(std::move(v), "parity obstruction");
  }
  v.t0 = v.r * kPi / v.gap_structure.chi;
  v.transfer_phase = std::exp(-kI * (lambda0 * v.t0 + phi0));
  return confirm(std::move(v), h, options);
}

double minimal_transfer_time(const TransferVerdict& verdict) {
  if (verdict.status != TransferStatus::Perfect) {
    throw NotPerfect(std::string("verdict is ") + to_string(verdict.status));
  }
  if (verdict.exact) return verdict.r * kPi / verdict.gap_structure.chi;
  return verdict.t0;
}

SymmetryOperator symmetry_operator(const SpectralDecomposition& dec, const WeightTest& weights) {
  if (!weights.passed || weights.phases.size() != dec.size()) {
    throw PhaseUndefined("symmetry operator needs a passing weight test on this decomposition");
  }
  const auto dim = static_cast<Eigen::Index>(dec.n);
  SymmetryOperator s{ComplexMatrix::Zero(dim, dim)};
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const Complex phase = weights.phases[k] ? std::exp(kI * *weights.phases[k]) : Complex(1.0, 0.0);
    s.matrix += phase * dec.eigenspaces[k].projector();
  }
  return s;
}

SymmetryOperator symmetry_operator(const SpectralDecomposition& dec, Vertex a, Vertex b,
                                   const CheckOptions& options) {
  return symmetry_operator(dec, weight_test(dec, a, b, options));
}

SymmetryResiduals symmetry_residuals(const SymmetryOperator& s,
                                     const SingleExcitationHamiltonian& h, Vertex a, Vertex b) {
  const ComplexMatrix& m = s.matrix;
  const auto dim = m.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  SymmetryResiduals r;
  r.unitarity = (m * m.adjoint() - identity).cwiseAbs().maxCoeff();
  r.commutator = (m * h.matrix() * m.adjoint() - h.matrix()).cwiseAbs().maxCoeff();
  r.mapping = (m * basis_state(h.n(), a) - basis_state(h.n(), b)).norm();
  r.involution = (m * m - identity).cwiseAbs().maxCoeff();
  return r;
}

PhaseClassification bipartite_phase_class(const Graph& g, const SingleExcitationHamiltonian& h,
                                          Vertex a, Vertex m, double t) {
  if (g.n() != h.n()) throw IndexOutOfRange("graph and Hamiltonian sizes differ");
  check_vertex(h.n(), a);
  check_vertex(h.n(), m);
  const BipartiteColoring coloring = bipartite_coloring(g);
  if (!coloring.valid) throw NotBipartite("coupling graph has an odd cycle");
  if (!h.is_real()) throw NonRealHamiltonian("bipartite phase classification needs a real H");
  if (!h.has_zero_diagonal()) throw NonzeroDiagonal("on-site fields must vanish");
  for (const auto& e : h.support_graph().edges()) {
    if (!g.has_edge(e.u, e.v)) {
      throw EdgeNotInGraph("coupling {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           "} is not an edge of the graph");
    }
  }

  PhaseClassification out;
  out.amplitude = fidelity(h, a, m, t).amplitude;
  if (coloring.colors[a] == coloring.colors[m]) {
    out.phase_class = PhaseClass::PurelyReal;
    out.residual = std::abs(out.amplitude.imag());
  } else {
    out.phase_class = PhaseClass::PurelyImaginary;
    out.residual = std::abs(out.amplitude.real());
  }
  if (out.residual > 1e-9) {
    throw InvariantViolation("bipartite amplitude classification violated, residual " +
                             format_value(out.residual));
  }
  return out;
}

}  // namespace pstlab
