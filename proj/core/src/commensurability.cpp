#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "pstlab/error.hpp"
#include "pstlab/spectral.hpp"

namespace pstlab {

namespace {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// First continued-fraction convergent p/q of x with q <= max_den whose
// error, scaled by `unit`, meets `tol` both absolutely and relative to the
// implied grid spacing unit / q.
std::optional<Fraction> rationalise(long double x, long double unit, std::int64_t max_den,
                                    long double tol) {
  long double rest = x;
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_real = std::floor(rest);
    if (a_real > 1e15L) return std::nullopt;
    const auto a = static_cast<std::int64_t>(a_real);
    if (k_prev > 0 && a > max_den) return std::nullopt;
    const std::int64_t h = a * h_prev + h_prev2;
    const std::int64_t k = a * k_prev + k_prev2;
    if (k > max_den) return std::nullopt;
    const long double err = unit * std::fabs(x - static_cast<long double>(h) / k);
    if (err <= tol * std::min(1.0L, unit / k)) return Fraction{h, k};
    const long double frac = rest - a_real;
    if (frac <= 0.0L) return std::nullopt;
    rest = 1.0L / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

double max_residual(std::span<const double> values, const std::vector<std::int64_t>& z,
                    double chi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    worst = std::max(worst, std::abs(values[i] - chi * static_cast<double>(z[i])));
  }
  return worst;
}

}  // namespace

CommensurabilityResult real_gcd(std::span<const double> values, std::int64_t max_denominator,
                                double residual_tol) {
  if (values.empty()) throw DegenerateInput("real_gcd needs at least one value");
  for (double v : values) {
    if (!(v > residual_tol)) {
      throw DegenerateInput("value " + std::to_string(v) + " not above residual tolerance");
    }
  }

  CommensurabilityResult out;
  out.max_denominator = max_denominator;

  const long double unit = values[0];
  std::vector<Fraction> ratios;
  ratios.reserve(values.size());
  std::int64_t common = 1;
  for (double v : values) {
    const auto f = rationalise(static_cast<long double>(v) / unit, unit, max_denominator,
                               static_cast<long double>(residual_tol));
    if (!f) return out;
    ratios.push_back(*f);
    common = std::lcm(common, f->den);
    if (common > max_denominator) return out;
  }

  std::vector<std::int64_t> z;
  z.reserve(values.size());
  std::int64_t divisor = 0;
  for (const auto& f : ratios) {
    z.push_back(f.num * (common / f.den));
    divisor = std::gcd(divisor, z.back());
  }
  for (auto& zi : z) zi /= divisor;

  // Two candidate scales: pinned to the reference value, and least squares.
  const double pinned = values[0] / static_cast<double>(z[0]);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += values[i] * static_cast<double>(z[i]);
    den += static_cast<double>(z[i]) * static_cast<double>(z[i]);
  }
  const double fitted = num / den;
  const double r_pinned = max_residual(values, z, pinned);
  const double r_fitted = max_residual(values, z, fitted);
  const double chi = r_fitted <= r_pinned ? fitted : pinned;
  const double residual = std::min(r_fitted, r_pinned);

  out.chi = chi;
  out.integers = std::move(z);
  out.residual = residual;
  out.commensurable = residual <= residual_tol * std::min(1.0, chi);
  if (!out.commensurable) {
    out.chi = 0.0;
    out.integers.clear();
  }
  return out;
}

}  // namespace pstlab
