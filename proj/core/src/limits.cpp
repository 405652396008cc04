#include "pstlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "pstlab/error.hpp"

namespace pstlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-section minimisation of g on [lo, hi].
template <typename G>
std::pair<double, double> minimise(const G& g, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  for (int iter = 0; iter < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++iter) {
    if (g1 > g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + ratio * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - ratio * (hi - lo);
      g1 = g(x1);
    }
  }
  return g1 <= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

std::size_t ceil_tolerant(double x) {
  return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-12)));
}

}  // namespace

std::vector<double> autocorrelation_zeros(const SpectralDecomposition& dec, Vertex a, double t0,
                                          const ZeroScanOptions& scan) {
  if (!(t0 > 0.0)) throw DegenerateInput("t0 must be positive");
  if (scan.grid < 1000) throw DegenerateInput("zero scan grid must have at least 1000 points");
  std::vector<double> weight;
  std::vector<double> lambda;
  for (const auto& c : support_components(dec, a)) {
    weight.push_back(c.norm * c.norm);
    lambda.push_back(dec.eigenspaces[c.eigenspace].eigenvalue);
  }
  const auto f = [&](double t) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < weight.size(); ++k) {
      sum += weight[k] * std::exp(std::complex<double>(0.0, -lambda[k] * t));
    }
    return std::abs(sum);
  };

  const std::size_t grid = scan.grid;
  const double step = t0 / static_cast<double>(grid);
  std::vector<double> mag(grid + 1);
  for (std::size_t j = 0; j <= grid; ++j) mag[j] = f(step * static_cast<double>(j));

  std::vector<double> zeros;
  const double edge = 1e-7 * t0;
  for (std::size_t j = 1; j < grid; ++j) {
    if (!(mag[j] <= mag[j - 1] && mag[j] < mag[j + 1])) continue;
    const auto [t, value] = minimise(f, step * static_cast<double>(j - 1),
                                     step * static_cast<double>(j + 1));
    if (value > scan.tol || t <= edge || t >= t0 - edge) continue;
    if (!zeros.empty() && t - zeros.back() <= step) continue;
    zeros.push_back(t);
  }
  return zeros;
}

std::vector<double> autocorrelation_zeros(const SingleExcitationHamiltonian& h, Vertex a,
                                          double t0, const ZeroScanOptions& scan) {
  return autocorrelation_zeros(decompose(h), a, t0, scan);
}

RateReport rate_report(const SingleExcitationHamiltonian& h, Vertex a, Vertex b,
                       const CheckOptions& options, const ZeroScanOptions& scan) {
  const SpectralDecomposition dec = decompose(h, options.grouping_tol);
  return rate_report(h, dec, check_transfer(h, dec, a, b, options), scan);
}

RateReport rate_report(const SingleExcitationHamiltonian& h, const SpectralDecomposition& dec,
                       const TransferVerdict& verdict, const ZeroScanOptions& scan) {
  if (verdict.status != TransferStatus::Perfect) {
    throw NotPerfect(std::string("rate report needs a perfect transfer, got ") +
                     to_string(verdict.status));
  }
  RateReport out;
  const auto d = distance(h.support_graph(), verdict.source, verdict.target);
  if (!d) throw InvariantViolation("perfect transfer between disconnected vertices");
  out.distance = *d;
  out.supported_eigenspaces = verdict.supported.size();
  out.t0 = verdict.t0;
  out.zero_times = autocorrelation_zeros(dec, verdict.source, verdict.t0, scan);
  out.zero_count = out.zero_times.size();
  out.bound_satisfied = 2 * out.zero_count + out.distance <= out.supported_eigenspaces;

  double coupling_sum = 0.0;
  for (std::size_t j = 0; j < h.n(); ++j) {
    if (j != verdict.source) coupling_sum += std::abs(h(verdict.source, j));
  }
  out.ml_lower_bound = static_cast<double>(out.zero_count + 1) * kPi / (4.0 * coupling_sum);
  return out;
}

bool routing_bound_check(long long distance, long long targets, long long eigenspaces,
                         long long n) {
  if (distance <= 0 || targets <= 0 || eigenspaces <= 0 || n <= 0) return false;
  return distance * targets <= eigenspaces - 1 && eigenspaces <= n;
}

RoutingScan routing_impossibility_scan(const SingleExcitationHamiltonian& h, Vertex a,
                                       const CheckOptions& options) {
  if (!h.is_real()) throw NonRealHamiltonian("routing impossibility holds for real H only");
  if (a >= h.n()) throw IndexOutOfRange("source vertex out of range");
  const SpectralDecomposition dec = decompose(h, options.grouping_tol);
  RoutingScan out;
  out.source = a;
  for (Vertex c = 0; c < h.n(); ++c) {
    if (c == a) continue;
    TransferVerdict v = check_transfer(h, dec, a, c, options);
    if (v.status == TransferStatus::Perfect) out.perfect.push_back(std::move(v));
  }
  if (out.perfect.size() > 1) {
    std::ostringstream os;
    os.precision(12);
    os << "real Hamiltonian routes from vertex " << a << " to";
    for (const auto& v : out.perfect) os << " (" << v.target << ", t0=" << v.t0 << ")";
    throw InvariantViolation(os.str());
  }
  return out;
}

LaplacianBoundsReport laplacian_diameter_bounds(const Graph& g, const std::vector<double>& alphas,
                                                bool full_support_transfer) {
  const auto diam = diameter(g);
  if (!diam) throw Disconnected("Laplacian diameter bounds need a connected graph");

  LaplacianBoundsReport out;
  out.diameter = *diam;
  out.max_degree = g.max_degree();
  out.two_d = 2 * out.max_degree;

  const IntegerHamiltonian laplacian = laplacian_hamiltonian(g);
  const SpectralDecomposition dec = decompose(laplacian.to_complex());
  const IntegralSpectrum exact = is_integral_spectrum(laplacian);
  out.integral = exact.integral;
  if (exact.integral) {
    out.distinct_eigenvalues = std::set<std::int64_t>(exact.roots.begin(), exact.roots.end()).size();
  } else {
    out.distinct_eigenvalues = dec.size();
  }
  out.k_minus_1 = out.distinct_eigenvalues - 1;

  // lambda_2: second smallest eigenvalue with multiplicity.
  if (g.n() >= 2) {
    const auto& first = dec.eigenspaces.front();
    out.algebraic_connectivity =
        first.dim() >= 2 ? first.eigenvalue : dec.eigenspaces[1].eigenvalue;
  }

  const double n = static_cast<double>(g.n());
  const double d = static_cast<double>(out.max_degree);
  for (double alpha : alphas) {
    if (!(alpha > 1.0)) throw DegenerateInput("Mohar bound needs alpha > 1");
    const double inner = std::sqrt(2.0 * d) * std::sqrt((alpha * alpha - 1.0) / (4.0 * alpha)) + 1.0;
    const double logs = std::log(n / 2.0) / std::log(alpha);
    out.mohar.push_back({alpha, 2 * ceil_tolerant(inner) * ceil_tolerant(logs)});
  }
  out.mohar_applicable = g.n() >= 3 && out.algebraic_connectivity >= 1.0 - 1e-9;
  out.two_d_asserted = full_support_transfer;

  bool ok = out.diameter + 1 <= out.distinct_eigenvalues;
  if (out.mohar_applicable) {
    for (const auto& m : out.mohar) ok = ok && out.diameter <= m.bound;
  }
  if (out.two_d_asserted) ok = ok && out.diameter <= out.two_d;
  out.all_satisfied = ok;
  return out;
}

bool complement_pst_condition(double t0, std::size_t n) {
  if (!(t0 > 0.0) || n < 2) throw DegenerateInput("need t0 > 0 and n >= 2");
  const double period = 2.0 * kPi;
  const double x = std::fmod(t0 * static_cast<double>(n), period);
  return std::min(x, period - x) <= 1e-8;
}

bool full_eigenspace_support(const SpectralDecomposition& dec, Vertex v, double support_tol) {
  for (const auto& c : support_components(dec, v)) {
    if (c.norm <= support_tol) return false;
  }
  return true;
}

}  // namespace pstlab
