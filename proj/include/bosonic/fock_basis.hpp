#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace bosonic {

/// Photon counts per output mode, the outcome of one Fock measurement.
class DetectionPattern {
 public:
  using Count = std::uint16_t;

  DetectionPattern() = default;
  explicit DetectionPattern(std::vector<Count> counts);
  DetectionPattern(std::initializer_list<Count> counts);

  std::size_t modes() const noexcept { return counts_.size(); }
  unsigned photons() const noexcept;
  Count operator[](std::size_t mode) const { return counts_[mode]; }
  Count& operator[](std::size_t mode) { return counts_[mode]; }
  const std::vector<Count>& counts() const noexcept { return counts_; }

  std::string to_string() const;

  auto operator<=>(const DetectionPattern&) const = default;

 private:
  std::vector<Count> counts_;
};

struct DetectionPatternHash {
  std::size_t operator()(const DetectionPattern& p) const noexcept;
};

/// All weak compositions of n into M parts. Index 0 is (n,0,...,0) and the
/// order is descending lexicographic.
class SectorBasis {
 public:
  /// Indexing only; patterns are not stored. Throws RefusalError when the
  /// sector size overflows 64 bits.
  SectorBasis(std::size_t modes, unsigned photons);

  std::size_t modes() const noexcept { return modes_; }
  unsigned photons() const noexcept { return photons_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t index_of(const DetectionPattern& p) const;
  DetectionPattern pattern_at(std::uint64_t index) const;
  bool contains(const DetectionPattern& p) const noexcept;

  /// Materialized patterns in canonical order; empty unless built by enumerate_basis.
  const std::vector<DetectionPattern>& patterns() const noexcept { return patterns_; }

 private:
  friend SectorBasis enumerate_basis(std::size_t modes, unsigned photons);

  std::size_t modes_;
  unsigned photons_;
  std::uint64_t size_;
  std::vector<DetectionPattern> patterns_;
};

/// Largest sector enumerate_basis will materialize.
inline constexpr std::uint64_t kMaxMaterializedSector = 20'000'000;

SectorBasis enumerate_basis(std::size_t modes, unsigned photons);

std::uint64_t pattern_to_index(const SectorBasis& basis, const DetectionPattern& p);
DetectionPattern index_to_pattern(const SectorBasis& basis, std::uint64_t index);

/// binom(n + M - 1, n), checked against 64-bit overflow.
std::uint64_t sector_size(std::size_t modes, unsigned photons);

}  // namespace bosonic
