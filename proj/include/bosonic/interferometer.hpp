#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "bosonic/fock_basis.hpp"

namespace bosonic {

using Complex = std::complex<double>;

/// Beam splitter with phase shifter coupling modes i < j.
struct TwoModeGate {
  std::size_t i = 0;
  std::size_t j = 1;
  double theta = 0.0;
  double psi = 0.0;
};

/// Heisenberg transfer matrix of one gate: U (a_i, a_j)^T U^dagger = T (a_i, a_j)^T,
/// T = e^{-i psi/2} [[c e^{i psi}, s e^{i psi}], [-s, c]] with c, s the half-angle cos, sin.
std::array<Complex, 4> gate_transfer(double theta, double psi);

/// Fock-space block of a gate on the states with m photons in modes (i, j).
/// Row-major (m+1)x(m+1); index p is the photon count in mode i.
std::vector<Complex> two_mode_block(double theta, double psi, unsigned m);

/// Sliced triangular mesh on M modes with an input pattern.
struct CircuitSpec {
  std::size_t modes = 0;
  std::size_t depth = 0;
  std::vector<TwoModeGate> gates;
  DetectionPattern input;

  std::size_t gate_count() const noexcept { return gates.size(); }
};

/// Gate layout of slices 1..depth. Slice s is the cascade (M-2,M-1), (M-3,M-2), ..., (s-1,s),
/// so it holds M - s gates. Angles are zero placeholders; input is (1,...,1).
CircuitSpec build_reck_slices(std::size_t modes, std::size_t depth);

/// (1,...,1) for n = M, (1,...,1,0) for n = M - 1.
DetectionPattern standard_input(std::size_t modes, unsigned photons);

/// build_reck_slices with the standard input for n photons.
CircuitSpec make_circuit(std::size_t modes, unsigned photons, std::size_t depth);

/// Angles are either G values (theta per gate, psi = 0) or 2G values (all theta, then all psi).
/// Throws ConfigurationError on any other length.
std::vector<TwoModeGate> bind_angles(const CircuitSpec& circuit, std::span<const double> angles);

/// Sectors up to this size are stored densely.
inline constexpr std::uint64_t kDenseSectorLimit = 1'000'000;

/// Pure state in a fixed (M, n) sector, dense over the canonical basis or sparse.
class QuantumState {
 public:
  enum class Storage { Automatic, Dense, Sparse };

  static QuantumState basis_state(const DetectionPattern& p, Storage storage = Storage::Automatic);

  std::size_t modes() const noexcept { return modes_; }
  unsigned photons() const noexcept { return photons_; }
  bool is_dense() const noexcept { return basis_ != nullptr; }

  Complex amplitude(const DetectionPattern& p) const;
  double norm_squared() const;

  /// Non-zero amplitudes; canonical order when dense.
  std::vector<std::pair<DetectionPattern, Complex>> entries() const;

  /// Dense storage access. Throws ConfigurationError on a sparse state.
  const SectorBasis& basis() const;
  const std::vector<Complex>& dense_amplitudes() const;

 private:
  friend QuantumState apply_gate(const QuantumState& state, const TwoModeGate& g);
  friend class CircuitSimulator;

  QuantumState() = default;

  std::size_t modes_ = 0;
  unsigned photons_ = 0;
  std::shared_ptr<const SectorBasis> basis_;
  std::vector<Complex> dense_;
  std::unordered_map<DetectionPattern, Complex, DetectionPatternHash> sparse_;
};

/// Applies the gate's two-mode unitary block by block. Throws NumericIntegrityError when
/// the input norm deviates from 1 by more than 1e-9.
QuantumState apply_gate(const QuantumState& state, const TwoModeGate& g);

/// U|in> with gates in circuit order.
QuantumState evolve(const CircuitSpec& circuit, std::span<const double> angles);

/// Probability per pattern; dense states list the whole sector.
struct PatternDistribution {
  std::vector<DetectionPattern> patterns;
  std::vector<double> probabilities;

  double total() const;
};

PatternDistribution exact_distribution(const QuantumState& state);

/// Patterns whose probability exceeds tol.
std::vector<DetectionPattern> support(const QuantumState& state, double tol = 1e-20);

/// Single-particle transfer matrix T_1 T_2 ... T_K of the bound circuit.
Eigen::MatrixXcd transfer_matrix(const CircuitSpec& circuit, std::span<const double> angles);

/// <in| U^dagger (sum_kl o_kl a_k^dagger a_l) U |in> from the M x M transfer matrix.
/// Throws DomainError when O is not Hermitian within 1e-9.
double schwinger_expectation(const CircuitSpec& circuit, std::span<const double> angles,
                             const Eigen::MatrixXcd& observable);

/// Repeated dense evolution of one circuit layout with cached gate groupings.
class CircuitSimulator {
 public:
  explicit CircuitSimulator(CircuitSpec circuit);

  const CircuitSpec& circuit() const noexcept { return circuit_; }
  const SectorBasis& basis() const noexcept { return *basis_; }

  /// Amplitudes over the canonical basis.
  void evolve_into(std::span<const double> angles, std::vector<Complex>& amplitudes) const;
  QuantumState evolve(std::span<const double> angles) const;

 private:
  struct PairGroups {
    std::size_t i, j;
    // Concatenated index runs; run r has photon total totals[r] and m+1 entries ordered by p.
    std::vector<std::uint32_t> indices;
    std::vector<std::uint32_t> offsets;
    std::vector<unsigned> totals;
  };

  CircuitSpec circuit_;
  std::shared_ptr<const SectorBasis> basis_;
  std::vector<PairGroups> groups_;
  std::vector<std::size_t> gate_group_;
  std::uint64_t input_index_ = 0;
};

}  // namespace bosonic
