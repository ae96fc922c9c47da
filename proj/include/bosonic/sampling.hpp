#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bosonic/interferometer.hpp"
#include "bosonic/random.hpp"

namespace bosonic {

/// N_s categorical draws by inverse CDF over the distribution's pattern order.
std::vector<DetectionPattern> sample_patterns(const PatternDistribution& dist, std::size_t samples,
                                              std::uint64_t stream_seed);

/// Indices into probabilities drawn by inverse CDF; the mass is rescaled to its total.
std::vector<std::size_t> sample_indices(std::span<const double> probabilities, std::size_t samples,
                                        RandomStream& rng);

/// Draws output patterns one shot at a time without the full output state. Gates are
/// reordered topologically to keep few modes active, and each mode is measured right after
/// its last gate, so only the modes between their first and last gate are held coherently.
class SequentialSampler {
 public:
  static constexpr std::size_t kMaxWindow = 8;

  /// Throws ConfigurationError when the circuit needs more than kMaxWindow active modes.
  explicit SequentialSampler(CircuitSpec circuit);

  void bind(std::span<const double> angles);
  DetectionPattern sample(RandomStream& rng);
  std::size_t max_window() const noexcept { return max_window_; }

 private:
  struct Step {
    std::size_t gate;
    std::vector<std::size_t> measure;
  };
  struct Entry {
    std::uint64_t key;
    Complex amp;
  };

  const std::vector<Complex>& block(std::size_t gate, unsigned m);

  CircuitSpec circuit_;
  std::vector<TwoModeGate> bound_;
  std::vector<Step> schedule_;
  std::vector<std::size_t> untouched_;
  std::size_t max_window_ = 0;
  std::vector<std::vector<std::vector<Complex>>> blocks_;
  std::vector<Entry> state_, scratch_;
};

}  // namespace bosonic
