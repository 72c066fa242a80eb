#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kwlab {

// H2(p) = p*log2(1/p) + (1-p)*log2(1/(1-p)), with H2(0) = H2(1) = 0.
inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

struct BinomialEntropyBounds {
  double lower = 0, upper = 0;
  std::uint64_t exact = 0;
};

// The sandwich 1/(n+1) * 2^{H2(k/n) n} <= C(n,k) <= 2^{H2(k/n) n}.
// The bracketing is asserted here (with slack for double rounding).
inline BinomialEntropyBounds binomial_entropy_bounds(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("binomial_entropy_bounds: need 0 <= k <= n");
  BinomialEntropyBounds r;
  double h = binary_entropy((double)k / n);
  r.upper = std::exp2(h * n);
  r.lower = r.upper / (n + 1);
  r.exact = binomial(n, k);
  const double slack = 1e-9;
  if (!(r.lower <= r.exact * (1 + slack) && r.exact <= r.upper * (1 + slack)))
    throw std::logic_error("binomial_entropy_bounds: bracketing violated");
  return r;
}

}  // namespace kwlab
