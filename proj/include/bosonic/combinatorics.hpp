#pragma once

#include <cstdint>

namespace bosonic {

/// Exact binomial coefficient; throws RefusalError when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Binomial that is zero for a negative or out-of-range lower index (and for n < 0).
std::uint64_t binomial_or_zero(std::int64_t n, std::int64_t k);

/// log(n!) via lgamma.
double log_factorial(unsigned n);

/// Catalan number C_m.
std::uint64_t catalan_number(unsigned m);

}  // namespace bosonic
