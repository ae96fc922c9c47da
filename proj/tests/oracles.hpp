#pragma once

// Independent reference computations shared by the tests.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bosonic/fock_basis.hpp"

namespace oracle {

using Complex = std::complex<double>;

/// Ryser's formula.
inline Complex permanent(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  Complex total = 0.0;
  for (unsigned long subset = 1; subset < (1ul << n); ++subset) {
    Complex prod = 1.0;
    for (int r = 0; r < n; ++r) {
      Complex row = 0.0;
      for (int c = 0; c < n; ++c) {
        if (subset & (1ul << c)) row += a(r, c);
      }
      prod *= row;
    }
    const int bits = __builtin_popcountl(subset);
    total += ((n - bits) % 2 ? -1.0 : 1.0) * prod;
  }
  return total;
}

inline double factorial(unsigned k) { return std::tgamma(k + 1.0); }

/// <out|U|in> = Perm(conj(T)[rows of in, cols of out]) / sqrt(prod in! prod out!),
/// with T the single-particle transfer matrix.
inline Complex fock_amplitude(const Eigen::MatrixXcd& t, const bosonic::DetectionPattern& in,
                              const bosonic::DetectionPattern& out) {
  std::vector<int> rows, cols;
  double norm = 1.0;
  for (std::size_t k = 0; k < in.modes(); ++k) {
    for (unsigned r = 0; r < in[k]; ++r) rows.push_back(static_cast<int>(k));
    for (unsigned r = 0; r < out[k]; ++r) cols.push_back(static_cast<int>(k));
    norm *= factorial(in[k]) * factorial(out[k]);
  }
  Eigen::MatrixXcd sub(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = std::conj(t(rows[r], cols[c]));
  }
  return permanent(sub) / std::sqrt(norm);
}

/// All weak compositions of n into m parts, produced by recursion rather than ranking.
inline void compositions(std::size_t m, unsigned n, std::vector<bosonic::DetectionPattern>& out,
                         std::vector<bosonic::DetectionPattern::Count> prefix = {}) {
  if (prefix.size() + 1 == m) {
    prefix.push_back(static_cast<bosonic::DetectionPattern::Count>(n));
    out.emplace_back(prefix);
    return;
  }
  for (int v = static_cast<int>(n); v >= 0; --v) {
    auto next = prefix;
    next.push_back(static_cast<bosonic::DetectionPattern::Count>(v));
    compositions(m, n - static_cast<unsigned>(v), out, next);
  }
}

}  // namespace oracle
