#include "bosonic/fock_basis.hpp"

#include <numeric>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"

namespace bosonic {

DetectionPattern::DetectionPattern(std::vector<Count> counts) : counts_(std::move(counts)) {}

DetectionPattern::DetectionPattern(std::initializer_list<Count> counts) : counts_(counts) {}

unsigned DetectionPattern::photons() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0u);
}

std::string DetectionPattern::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(counts_[k]);
  }
  return out + ")";
}

std::size_t DetectionPatternHash::operator()(const DetectionPattern& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto c : p.counts()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t sector_size(std::size_t modes, unsigned photons) {
  if (modes == 0) throw DomainError("invalid dimension: M must be at least 1");
  return binomial(photons + modes - 1, photons);
}

SectorBasis::SectorBasis(std::size_t modes, unsigned photons)
    : modes_(modes), photons_(photons), size_(sector_size(modes, photons)) {
  if (photons > 0xFFFF) throw DomainError("photon number exceeds 65535");
}

bool SectorBasis::contains(const DetectionPattern& p) const noexcept {
  return p.modes() == modes_ && p.photons() == photons_;
}

// Patterns preceding p: at position i every larger value v leaves r - v photons
// for the M - i - 1 remaining modes, and summing over v telescopes to one binomial.
std::uint64_t SectorBasis::index_of(const DetectionPattern& p) const {
  if (!contains(p)) {
    throw DomainError("pattern " + p.to_string() + " is outside sector (M=" +
                      std::to_string(modes_) + ", n=" + std::to_string(photons_) + ")");
  }
  std::uint64_t index = 0;
  unsigned remaining = photons_;
  for (std::size_t i = 0; i + 1 < modes_; ++i) {
    const unsigned v = p[i];
    const std::uint64_t k = modes_ - i - 2;
    if (v < remaining) index += binomial(remaining - v + k, k + 1);
    remaining -= v;
  }
  return index;
}

DetectionPattern SectorBasis::pattern_at(std::uint64_t index) const {
  if (index >= size_) {
    throw DomainError("index " + std::to_string(index) + " out of range for sector of size " +
                      std::to_string(size_));
  }
  std::vector<DetectionPattern::Count> counts(modes_, 0);
  unsigned remaining = photons_;
  for (std::size_t i = 0; i + 1 < modes_; ++i) {
    const std::uint64_t k = modes_ - i - 2;
    unsigned v = remaining;
    for (;; --v) {
      const std::uint64_t block = binomial(remaining - v + k, k);
      if (index < block) break;
      index -= block;
    }
    counts[i] = static_cast<DetectionPattern::Count>(v);
    remaining -= v;
  }
  counts[modes_ - 1] = static_cast<DetectionPattern::Count>(remaining);
  return DetectionPattern(std::move(counts));
}

namespace {

void enumerate_into(std::vector<DetectionPattern::Count>& prefix, std::size_t mode,
                    unsigned remaining, std::vector<DetectionPattern>& out) {
  if (mode + 1 == prefix.size()) {
    prefix[mode] = static_cast<DetectionPattern::Count>(remaining);
    out.emplace_back(prefix);
    return;
  }
  for (unsigned v = remaining + 1; v-- > 0;) {
    prefix[mode] = static_cast<DetectionPattern::Count>(v);
    enumerate_into(prefix, mode + 1, remaining - v, out);
  }
}

}  // namespace

SectorBasis enumerate_basis(std::size_t modes, unsigned photons) {
  SectorBasis basis(modes, photons);
  if (basis.size() > kMaxMaterializedSector) {
    throw RefusalError("sector size " + std::to_string(basis.size()) +
                       " exceeds the enumeration bound " + std::to_string(kMaxMaterializedSector));
  }
  basis.patterns_.reserve(basis.size());
  std::vector<DetectionPattern::Count> prefix(modes, 0);
  enumerate_into(prefix, 0, photons, basis.patterns_);
  return basis;
}

std::uint64_t pattern_to_index(const SectorBasis& basis, const DetectionPattern& p) {
  return basis.index_of(p);
}

DetectionPattern index_to_pattern(const SectorBasis& basis, std::uint64_t index) {
  return basis.pattern_at(index);
}

}  // namespace bosonic
