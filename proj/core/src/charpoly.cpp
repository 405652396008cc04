#include <algorithm>
#include <cstdlib>

#include "pstlab/spectral.hpp"

namespace pstlab {

namespace {

using BigMatrix = std::vector<BigInt>;  // row-major n x n

}  // namespace

// Faddeev-LeVerrier over the integers:
//   M_0 = 0, c_n = 1,
//   M_k = H M_{k-1} + c_{n-k+1} I,   c_{n-k} = -tr(H M_k) / k.
// Every M_k is an integer matrix and the division by k is exact.
std::vector<BigInt> integer_char_poly(const IntegerHamiltonian& h) {
  const std::size_t n = h.n();
  std::vector<BigInt> coeffs(n + 1);
  coeffs[n] = 1;
  BigMatrix m(n * n);
  BigMatrix next(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const std::int64_t a = h(r, i);
          if (a != 0) acc += a * m[i * n + c];
        }
        if (r == c) acc += coeffs[n - k + 1];
        next[r * n + c] = std::move(acc);
      }
    }
    m.swap(next);
    BigInt trace = 0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = h(r, i);
        if (a != 0) trace += a * m[i * n + r];
      }
    }
    coeffs[n - k] = -trace / static_cast<long>(k);
  }
  return coeffs;
}

IntegralSpectrum is_integral_spectrum(const IntegerHamiltonian& h) {
  std::vector<BigInt> poly = integer_char_poly(h);
  IntegralSpectrum out;

  // Zero roots first: strip factors of lambda.
  while (poly.size() > 1 && poly.front() == 0) {
    out.roots.push_back(0);
    poly.erase(poly.begin());
  }

  // Every eigenvalue lies in the Gershgorin disc of radius max row sum.
  std::int64_t bound = 0;
  for (std::size_t r = 0; r < h.n(); ++r) {
    std::int64_t row = 0;
    for (std::size_t c = 0; c < h.n(); ++c) row += std::abs(h(r, c));
    bound = std::max(bound, row);
  }

  for (std::int64_t root = -bound; root <= bound && poly.size() > 1; ++root) {
    if (root == 0) continue;
    while (poly.size() > 1 && poly.front() % root == 0) {
      // Synthetic division by (lambda - root), highest power first.
      const std::size_t deg = poly.size() - 1;
      std::vector<BigInt> quotient(deg);
      BigInt carry = 0;
      for (std::size_t i = deg; i-- > 0;) {
        carry = poly[i + 1] + carry * root;
        quotient[i] = carry;
      }
      if (poly[0] + carry * root != 0) break;
      out.roots.push_back(root);
      poly = std::move(quotient);
    }
  }

  out.integral = poly.size() == 1;
  if (!out.integral) {
    out.roots.clear();
  } else {
    std::sort(out.roots.begin(), out.roots.end());
  }
  return out;
}

}  // namespace pstlab
