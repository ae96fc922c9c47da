#include "bosonic/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bosonic/errors.hpp"

namespace bosonic {

std::vector<std::size_t> sample_indices(std::span<const double> probabilities, std::size_t samples,
                                        RandomStream& rng) {
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    acc += probabilities[k];
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw NumericIntegrityError("cannot sample from a distribution with zero mass");
  std::vector<std::size_t> out(samples);
  for (auto& idx : out) {
    const double u = rng.uniform() * acc;
    idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    // Skip zero-mass entries that share the boundary value.
    while (probabilities[idx] == 0.0 && idx + 1 < cdf.size()) ++idx;
  }
  return out;
}

std::vector<DetectionPattern> sample_patterns(const PatternDistribution& dist, std::size_t samples,
                                              std::uint64_t stream_seed) {
  if (std::abs(dist.total() - 1.0) > 1e-9) throw NumericIntegrityError("distribution does not sum to 1");
  RandomStream rng(stream_seed);
  std::vector<DetectionPattern> out;
  out.reserve(samples);
  for (auto idx : sample_indices(dist.probabilities, samples, rng)) out.push_back(dist.patterns[idx]);
  return out;
}

SequentialSampler::SequentialSampler(CircuitSpec circuit) : circuit_(std::move(circuit)) {
  const std::size_t m = circuit_.modes;
  const std::size_t g = circuit_.gates.size();
  if (circuit_.input.modes() != m) throw ConfigurationError("input pattern does not match the circuit");
  std::vector<std::vector<std::size_t>> per_mode(m);
  for (std::size_t k = 0; k < g; ++k) {
    const auto& gate = circuit_.gates[k];
    if (!(gate.i < gate.j && gate.j < m)) throw DomainError("gate modes out of range");
    per_mode[gate.i].push_back(k);
    per_mode[gate.j].push_back(k);
  }
  for (std::size_t mode = 0; mode < m; ++mode) {
    if (per_mode[mode].empty()) untouched_.push_back(mode);
  }
  // Greedy topological order: a gate is ready when it is next on both of its modes.
  std::vector<std::size_t> next(m, 0);
  std::vector<bool> active(m, false), done(g, false);
  std::size_t window = 0;
  for (std::size_t placed = 0; placed < g; ++placed) {
    std::size_t pick = g;
    long best = 0;
    for (std::size_t k = 0; k < g; ++k) {
      if (done[k]) continue;
      const auto& gate = circuit_.gates[k];
      if (per_mode[gate.i][next[gate.i]] != k || per_mode[gate.j][next[gate.j]] != k) continue;
      long after = static_cast<long>(window) + !active[gate.i] + !active[gate.j];
      after -= (next[gate.i] + 1 == per_mode[gate.i].size()) + (next[gate.j] + 1 == per_mode[gate.j].size());
      if (pick == g || after < best) {
        pick = k;
        best = after;
      }
    }
    const auto& gate = circuit_.gates[pick];
    done[pick] = true;
    Step step{pick, {}};
    for (std::size_t mode : {gate.i, gate.j}) {
      if (!active[mode]) {
        active[mode] = true;
        ++window;
      }
    }
    max_window_ = std::max(max_window_, window);
    for (std::size_t mode : {gate.i, gate.j}) {
      if (++next[mode] == per_mode[mode].size()) {
        step.measure.push_back(mode);
        active[mode] = false;
        --window;
      }
    }
    schedule_.push_back(std::move(step));
  }
  if (max_window_ > kMaxWindow) {
    throw ConfigurationError("circuit needs " + std::to_string(max_window_) +
                             " simultaneously active modes; the sequential sampler supports " +
                             std::to_string(kMaxWindow));
  }
  bound_ = circuit_.gates;
  blocks_.assign(g, {});
}

void SequentialSampler::bind(std::span<const double> angles) {
  bound_ = bind_angles(circuit_, angles);
  for (auto& b : blocks_) b.clear();
}

const std::vector<Complex>& SequentialSampler::block(std::size_t gate, unsigned m) {
  auto& cache = blocks_[gate];
  if (cache.size() <= m) cache.resize(m + 1);
  if (cache[m].empty()) cache[m] = two_mode_block(bound_[gate].theta, bound_[gate].psi, m);
  return cache[m];
}

DetectionPattern SequentialSampler::sample(RandomStream& rng) {
  const std::size_t m = circuit_.modes;
  std::vector<DetectionPattern::Count> out(m, 0);
  for (auto mode : untouched_) out[mode] = circuit_.input[mode];
  std::vector<int> slot_of(m, -1);
  std::uint32_t free_slots = (1u << kMaxWindow) - 1;
  state_.assign(1, Entry{0, 1.0});

  auto count_in = [](std::uint64_t key, int slot) { return static_cast<unsigned>((key >> (8 * slot)) & 0xFF); };
  std::array<Complex, 256> x;
  std::array<unsigned, 256> in_count;

  for (const auto& step : schedule_) {
    const auto& gate = bound_[step.gate];
    for (std::size_t mode : {gate.i, gate.j}) {
      if (slot_of[mode] >= 0) continue;
      const int slot = __builtin_ctz(free_slots);
      free_slots &= ~(1u << slot);
      slot_of[mode] = slot;
      const std::uint64_t add = static_cast<std::uint64_t>(circuit_.input[mode]) << (8 * slot);
      for (auto& e : state_) e.key |= add;
    }
    const int si = slot_of[gate.i], sj = slot_of[gate.j];
    const std::uint64_t clear = ~((std::uint64_t{0xFF} << (8 * si)) | (std::uint64_t{0xFF} << (8 * sj)));
    std::sort(state_.begin(), state_.end(), [&](const Entry& a, const Entry& b) {
      const auto ra = a.key & clear, rb = b.key & clear;
      return ra != rb ? ra < rb : count_in(a.key, si) < count_in(b.key, si);
    });
    scratch_.clear();
    for (std::size_t lo = 0; lo < state_.size();) {
      const std::uint64_t rest = state_[lo].key & clear;
      std::size_t hi = lo;
      while (hi < state_.size() && (state_[hi].key & clear) == rest) ++hi;
      const unsigned total = count_in(state_[lo].key, si) + count_in(state_[lo].key, sj);
      // Entries of a group have distinct counts in slot si, so the group is a sparse input column.
      std::size_t nnz = 0;
      for (std::size_t k = lo; k < hi; ++k) {
        if (state_[k].amp == Complex{}) continue;
        in_count[nnz] = count_in(state_[k].key, si);
        x[nnz++] = state_[k].amp;
      }
      const auto& b = block(step.gate, total);
      for (unsigned q = 0; q <= total; ++q) {
        const Complex* row = b.data() + q * (total + 1);
        Complex acc{};
        for (std::size_t t = 0; t < nnz; ++t) acc += row[in_count[t]] * x[t];
        if (acc == Complex{}) continue;
        const std::uint64_t key = rest | (static_cast<std::uint64_t>(q) << (8 * si)) |
                                  (static_cast<std::uint64_t>(total - q) << (8 * sj));
        scratch_.push_back(Entry{key, acc});
      }
      lo = hi;
    }
    state_.swap(scratch_);

    for (std::size_t mode : step.measure) {
      const int slot = slot_of[mode];
      unsigned top = 0;
      for (const auto& e : state_) top = std::max(top, count_in(e.key, slot));
      double marginal[256];
      std::fill(marginal, marginal + top + 1, 0.0);
      double norm = 0.0;
      for (const auto& e : state_) {
        const double p = std::norm(e.amp);
        marginal[count_in(e.key, slot)] += p;
        norm += p;
      }
      double u = rng.uniform() * norm;
      unsigned pick = top;
      for (unsigned c = 0; c <= top; ++c) {
        if (marginal[c] == 0.0) continue;
        if (u < marginal[c]) {
          pick = c;
          break;
        }
        u -= marginal[c];
      }
      while (marginal[pick] == 0.0 && pick > 0) --pick;
      const double scale = 1.0 / std::sqrt(marginal[pick]);
      const std::uint64_t mask = std::uint64_t{0xFF} << (8 * slot);
      std::size_t kept = 0;
      for (auto& e : state_) {
        if (count_in(e.key, slot) != pick) continue;
        state_[kept++] = Entry{e.key & ~mask, e.amp * scale};
      }
      state_.resize(kept);
      out[mode] = static_cast<DetectionPattern::Count>(pick);
      slot_of[mode] = -1;
      free_slots |= 1u << slot;
    }
  }
  return DetectionPattern(std::move(out));
}

}  // namespace bosonic
