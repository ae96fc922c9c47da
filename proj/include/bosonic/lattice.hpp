#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bosonic/bitstring.hpp"
#include "bosonic/fock_basis.hpp"

namespace bosonic {

/// Dyck paths of k steps from height delta1 to height delta2.
struct DyckSpec {
  long k = 0;
  long delta1 = 0;
  long delta2 = 0;
};

/// binom(k, (k+d2-d1)/2) - binom(k, (k-d2-d1-2)/2). Throws DomainError on negative
/// arguments or odd k + d2 - d1.
std::uint64_t dyck_count(const DyckSpec& spec);

/// Words over {U, D} in lexicographic order (D before U).
std::vector<std::string> enumerate_dyck_paths(const DyckSpec& spec);

/// Dyck path under iota = R(-pi/4) o R_x. Points are in units of 1/sqrt(2) of the rotated
/// lattice: (x, y) maps to (x - y, -(x + y)), U becomes (0, -2) and D becomes (2, 0).
struct StaircasePath {
  std::vector<std::pair<long, long>> points;
};

/// Throws DomainError when the word is not a path of spec.
StaircasePath staircase_iso(const std::string& word, const DyckSpec& spec);
/// Inverse map; recovers the word and the spec of its endpoints.
std::pair<std::string, DyckSpec> staircase_inverse(const StaircasePath& path);

/// Column heights (lambda_0 = 0, lambda_1, ..., lambda_{k+1}), non-decreasing.
class ExtendedFerrers {
 public:
  ExtendedFerrers() : columns_{0} {}
  explicit ExtendedFerrers(std::vector<unsigned> columns);
  ExtendedFerrers(std::initializer_list<unsigned> columns);

  /// (0, mu_1, ..., mu_k, mu_k): the last column repeats the top height.
  static ExtendedFerrers from_partition(const std::vector<unsigned>& mu);

  const std::vector<unsigned>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  unsigned operator[](std::size_t c) const { return columns_[c]; }
  std::string to_string() const;

  bool contained_in(const ExtendedFerrers& other) const;

  auto operator<=>(const ExtendedFerrers&) const = default;

 private:
  std::vector<unsigned> columns_;
};

struct ExtendedFerrersHash {
  std::size_t operator()(const ExtendedFerrers& f) const noexcept;
};

/// First differences (lambda_1 - lambda_0, ..., lambda_{k+1} - lambda_k).
DetectionPattern ferrers_to_pattern(const ExtendedFerrers& f);
/// Cumulative sums with a leading zero.
ExtendedFerrers pattern_to_ferrers(const DetectionPattern& p);

/// Diagrams lambda inside mu with the first and last columns held at mu's values,
/// and the one-box cover relation.
class YoungLattice {
 public:
  YoungLattice(ExtendedFerrers mu, std::vector<ExtendedFerrers> vertices);

  const ExtendedFerrers& mu() const noexcept { return mu_; }
  const std::vector<ExtendedFerrers>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& cover_edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool contains(const ExtendedFerrers& f) const;
  std::size_t index_of(const ExtendedFerrers& f) const;

  /// Sub-poset on the vertices that satisfy keep, cover edges recomputed.
  template <typename Pred>
  YoungLattice restricted(Pred keep) const {
    std::vector<ExtendedFerrers> v;
    for (const auto& f : vertices_) {
      if (keep(f)) v.push_back(f);
    }
    return YoungLattice(mu_, std::move(v));
  }

 private:
  ExtendedFerrers mu_;
  std::vector<ExtendedFerrers> vertices_;
  std::unordered_map<ExtendedFerrers, std::size_t, ExtendedFerrersHash> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

inline constexpr std::size_t kMaxLatticeVertices = 1'000'000;

/// Throws RefusalError beyond max_vertices.
YoungLattice young_lattice(const ExtendedFerrers& mu, std::size_t max_vertices = kMaxLatticeVertices);

/// Path-count parameters of the depth-i space: k = n + M - 1 and delta2 = i, with
/// delta1 = i for n = M - 1 and i + 1 for n = M.
DyckSpec catalan_dyck_spec(std::size_t modes, unsigned photons, std::size_t depth);

/// Greatest diagram of the depth-i space, columns in cascade order (detector M-1 first):
/// mu_d = min(d - 1 + delta1, n) for d < M and mu_M = n.
ExtendedFerrers catalan_top(std::size_t modes, unsigned photons, std::size_t depth);

/// Young lattice of catalan_top.
YoungLattice catalan_lattice(std::size_t modes, unsigned photons, std::size_t depth);

/// Diagram in cascade order for a detection pattern in mode order, and back.
ExtendedFerrers pattern_to_cascade_ferrers(const DetectionPattern& p);
DetectionPattern cascade_ferrers_to_pattern(const ExtendedFerrers& f);

/// Detection patterns (mode order, canonical descending order) of the depth-i space for
/// one photon per mode, padded with a trailing empty mode when n = M - 1.
/// Throws DomainError for n outside {M-1, M} or depth outside [1, M-1].
std::vector<DetectionPattern> catalan_basis(std::size_t modes, unsigned photons, std::size_t depth);

/// (0, s_1, ..., s_{M-1}, 0).
class BoxBitString {
 public:
  explicit BoxBitString(std::vector<std::uint8_t> bits);
  /// Inner bits s_1..s_{M-1} taken from code.
  static BoxBitString from_code(std::uint64_t code, std::size_t modes);

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// top - S; throws DomainError when the result is not a valid diagram.
ExtendedFerrers box_bitstring_apply(const ExtendedFerrers& top, const BoxBitString& s);

/// (0, 1, ..., M-1, M-1).
ExtendedFerrers box_top(std::size_t modes);

/// Whether the 2^{M-1} diagrams top - S give 2^{M-1} distinct wp_0 images.
bool parity_distinctness_check(std::size_t modes);

enum class BooleanCounting {
  /// A bottom vertex plus k distinct columns, each raised by one box, all 2^k combinations present.
  Interval,
  /// Any 2^k vertices closed under componentwise min/max and isomorphic to B_k.
  Sublattice,
};

/// Throws DomainError for k = 0; RefusalError for Sublattice counting above 5000 vertices.
std::uint64_t count_boolean_sublattices(const YoungLattice& lattice, unsigned k,
                                        BooleanCounting counting = BooleanCounting::Interval);

/// Boolean factors from the top down, each glued at the previous factor's bottom.
struct OrdinalSum {
  std::vector<unsigned> factors;                    // B_k ranks, top factor first
  std::vector<std::pair<unsigned, unsigned>> runs;  // (rank, multiplicity) in order
  bool residual = false;                            // chain stopped above the least element
  std::size_t covered_vertices = 0;
  std::vector<ExtendedFerrers> uncovered;

  std::string to_string() const;
};

OrdinalSum ordinal_sum_decomposition(const YoungLattice& lattice);

/// One line per vertex "v<id> diagram=... pattern=... bits=..." followed by "e <a> <b>" lines.
std::string export_lattice_text(const YoungLattice& lattice);

}  // namespace bosonic
