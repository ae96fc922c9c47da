#include "bosonic/parity.hpp"

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/lattice.hpp"

namespace bosonic {

BitString parity_map(const DetectionPattern& p, int j) {
  if (j != 0 && j != 1) throw DomainError("parity variant must be 0 or 1");
  std::vector<std::uint8_t> bits(p.modes());
  for (std::size_t k = 0; k < p.modes(); ++k) bits[k] = static_cast<std::uint8_t>((p[k] & 1u) ^ j);
  return BitString(std::move(bits));
}

BitStringDistribution coarse_grain(const PatternDistribution& dist, int j) {
  BitStringDistribution out;
  for (std::size_t k = 0; k < dist.patterns.size(); ++k) out[parity_map(dist.patterns[k], j)] += dist.probabilities[k];
  return out;
}

namespace {

void check_m(unsigned modes, unsigned m) {
  if (m > modes) throw DomainError("m=" + std::to_string(m) + " exceeds M=" + std::to_string(modes));
}

}  // namespace

std::uint64_t upsilon0(unsigned modes, unsigned photons, unsigned m) {
  check_m(modes, m);
  const long twice_lower = static_cast<long>(photons) - modes + m;
  if (twice_lower % 2 != 0) {
    throw DomainError("inadmissible (M, n, m) = (" + std::to_string(modes) + ", " + std::to_string(photons) +
                      ", " + std::to_string(m) + "): n - M + m is odd");
  }
  return binomial_or_zero((static_cast<long>(photons) + modes + m) / 2 - 1, twice_lower / 2);
}

std::uint64_t upsilon0_prime(unsigned modes, unsigned photons, unsigned m) {
  check_m(modes, m);
  const long twice_lower = static_cast<long>(photons) - m;
  if (twice_lower % 2 != 0) {
    throw DomainError("inadmissible (M, n, m) = (" + std::to_string(modes) + ", " + std::to_string(photons) +
                      ", " + std::to_string(m) + "): n - m is odd");
  }
  return binomial_or_zero((static_cast<long>(photons) + 2L * modes - m) / 2 - 1, twice_lower / 2);
}

CoverageReport verify_surjectivity(std::size_t modes, std::size_t depth, const std::set<unsigned>& photon_numbers,
                                   const std::set<int>& parities) {
  if (photon_numbers.empty()) throw ConfigurationError("no photon numbers requested");
  if (parities.empty()) throw ConfigurationError("no parity variants requested");
  if (modes < 2 || modes > 63) throw DomainError("coverage needs 2 <= M <= 63");
  CoverageReport report;
  report.modes = modes;
  report.depth = depth;
  report.sectors.assign(photon_numbers.begin(), photon_numbers.end());
  report.parities.assign(parities.begin(), parities.end());
  for (unsigned n : photon_numbers) {
    const auto basis = catalan_basis(modes, n, depth);
    for (int j : parities) {
      for (const auto& p : basis) ++report.multiplicities[parity_map(p, j)];
    }
  }
  const std::uint64_t all = std::uint64_t{1} << modes;
  for (std::uint64_t code = 0; code < all; ++code) {
    BitString b = BitString::from_code(code, modes);
    if (!report.multiplicities.count(b)) report.missing.push_back(std::move(b));
  }
  report.is_complete = report.missing.empty();
  return report;
}

CaseAnalysis full_depth_case_analysis(std::size_t modes) {
  if (modes < 2 || modes > 20) throw DomainError("case analysis needs 2 <= M <= 20");
  auto image = [&](unsigned n, int j) {
    std::set<BitString> out;
    const auto basis = enumerate_basis(modes, n);
    for (const auto& p : basis.patterns()) out.insert(parity_map(p, j));
    return out;
  };
  const unsigned m = static_cast<unsigned>(modes);
  std::set<BitString> a, b;
  if (modes % 2 == 0) {
    a = image(m, 0);
    b = image(m - 1, 0);
  } else {
    a = image(m - 1, 0);
    b = image(m - 1, 1);
  }
  CaseAnalysis r;
  r.first_image = a.size();
  r.second_image = b.size();
  std::size_t shared = 0;
  for (const auto& s : a) shared += b.count(s);
  r.disjoint = shared == 0;
  r.union_complete = a.size() + b.size() - shared == (std::size_t{1} << modes);
  return r;
}

bool binom_identity_check(unsigned p, unsigned q, unsigned r) {
  if (r > q) throw DomainError("binomial identity needs r <= q");
  std::uint64_t lhs = 0;
  for (unsigned s = 0; s <= r; ++s) lhs += binomial(p + s, s) * binomial(q - s, r - s);
  return lhs == binomial(p + q + 1, r);
}

}  // namespace bosonic
