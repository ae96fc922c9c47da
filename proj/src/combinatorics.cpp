#include "bosonic/combinatorics.hpp"

#include <cmath>
#include <string>

#include "bosonic/errors.hpp"

namespace bosonic {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) {
      throw RefusalError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                         ") exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t binomial_or_zero(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
}

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::uint64_t catalan_number(unsigned m) { return binomial(2 * m, m) / (m + 1); }

}  // namespace bosonic
