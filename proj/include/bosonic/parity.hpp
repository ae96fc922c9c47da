#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "bosonic/bitstring.hpp"
#include "bosonic/fock_basis.hpp"
#include "bosonic/interferometer.hpp"

namespace bosonic {

/// Probability mass per bit string.
using BitStringDistribution = std::map<BitString, double>;

/// b_i = (n_i mod 2) xor j. Throws DomainError unless j is 0 or 1.
BitString parity_map(const DetectionPattern& p, int j);

/// Sums pattern probabilities over each parity class.
BitStringDistribution coarse_grain(const PatternDistribution& dist, int j);

/// Patterns of H+(M, n) whose first m entries are even and last M - m odd:
/// binom((n+M+m)/2 - 1, (n-M+m)/2), zero for a negative lower index.
/// Throws DomainError when m > M or n - M + m is odd.
std::uint64_t upsilon0(unsigned modes, unsigned photons, unsigned m);

/// binom((n+2M-m)/2 - 1, (n-m)/2) = upsilon0(M, n, M - m). Throws DomainError when
/// m > M or n - m is odd.
std::uint64_t upsilon0_prime(unsigned modes, unsigned photons, unsigned m);

struct CoverageReport {
  std::size_t modes = 0;
  std::size_t depth = 0;
  std::vector<unsigned> sectors;
  std::vector<int> parities;
  std::map<BitString, std::uint64_t> multiplicities;
  std::vector<BitString> missing;
  bool is_complete = false;

  std::size_t covered_count() const noexcept { return multiplicities.size(); }
};

/// Parity images of the Catalan basis at the given depth, over the requested sectors
/// (each M or M-1) and parity variants. Throws ConfigurationError when either set is empty.
CoverageReport verify_surjectivity(std::size_t modes, std::size_t depth,
                                   const std::set<unsigned>& photon_numbers,
                                   const std::set<int>& parities);

/// Disjointness and union of the two parity images used at full depth: for even M the
/// wp_0 images of sectors M and M-1, for odd M the wp_0 and wp_1 images of sector M-1.
struct CaseAnalysis {
  std::size_t first_image = 0;
  std::size_t second_image = 0;
  bool disjoint = false;
  bool union_complete = false;
};

CaseAnalysis full_depth_case_analysis(std::size_t modes);

/// sum_{s=0}^{r} binom(p+s, s) binom(q-s, r-s) == binom(p+q+1, r).
bool binom_identity_check(unsigned p, unsigned q, unsigned r);

}  // namespace bosonic
