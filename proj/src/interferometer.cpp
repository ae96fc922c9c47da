#include "bosonic/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"

namespace bosonic {

std::array<Complex, 4> gate_transfer(double theta, double psi) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex global = std::polar(1.0, -psi / 2);
  const Complex phase = std::polar(1.0, psi);
  return {global * c * phase, global * s * phase, -global * s, global * c};
}

// Expands (w_ii a_i^+ + w_ij a_j^+)^p (w_ji a_i^+ + w_jj a_j^+)^(m-p) with w = conj(T).
std::vector<Complex> two_mode_block(double theta, double psi, unsigned m) {
  const auto t = gate_transfer(theta, psi);
  const Complex w00 = std::conj(t[0]), w01 = std::conj(t[1]);
  const Complex w10 = std::conj(t[2]), w11 = std::conj(t[3]);

  std::vector<Complex> p00(m + 1), p01(m + 1), p10(m + 1), p11(m + 1);
  p00[0] = p01[0] = p10[0] = p11[0] = 1.0;
  for (unsigned e = 1; e <= m; ++e) {
    p00[e] = p00[e - 1] * w00;
    p01[e] = p01[e - 1] * w01;
    p10[e] = p10[e - 1] * w10;
    p11[e] = p11[e - 1] * w11;
  }
  std::vector<std::vector<double>> pascal(m + 1);
  for (unsigned r = 0; r <= m; ++r) {
    pascal[r].assign(r + 1, 1.0);
    for (unsigned k = 1; k < r; ++k) pascal[r][k] = pascal[r - 1][k - 1] + pascal[r - 1][k];
  }
  std::vector<double> lf(m + 1);
  for (unsigned k = 0; k <= m; ++k) lf[k] = log_factorial(k);

  std::vector<Complex> block((m + 1) * (m + 1));
  for (unsigned p = 0; p <= m; ++p) {
    for (unsigned q = 0; q <= m; ++q) {
      Complex acc = 0.0;
      const unsigned a_lo = q > m - p ? q - (m - p) : 0;
      const unsigned a_hi = std::min(p, q);
      for (unsigned a = a_lo; a <= a_hi; ++a) {
        const unsigned b = q - a;
        acc += pascal[p][a] * pascal[m - p][b] * p00[a] * p01[p - a] * p10[b] * p11[m - p - b];
      }
      const double scale = std::exp(0.5 * (lf[q] + lf[m - q] - lf[p] - lf[m - p]));
      block[q * (m + 1) + p] = acc * scale;
    }
  }
  return block;
}

CircuitSpec build_reck_slices(std::size_t modes, std::size_t depth) {
  if (modes < 2 || depth < 1 || depth > modes - 1) {
    throw DomainError("depth " + std::to_string(depth) + " outside [1, M-1] for M=" +
                      std::to_string(modes));
  }
  CircuitSpec c;
  c.modes = modes;
  c.depth = depth;
  for (std::size_t s = 1; s <= depth; ++s) {
    for (std::size_t j = modes - 1; j >= s; --j) c.gates.push_back({j - 1, j, 0.0, 0.0});
  }
  c.input = standard_input(modes, static_cast<unsigned>(modes));
  return c;
}

DetectionPattern standard_input(std::size_t modes, unsigned photons) {
  if (modes == 0 || (photons != modes && photons + 1 != modes)) {
    throw DomainError("input photon number must be M or M-1 (M=" + std::to_string(modes) +
                      ", n=" + std::to_string(photons) + ")");
  }
  std::vector<DetectionPattern::Count> counts(modes, 1);
  if (photons + 1 == modes) counts.back() = 0;
  return DetectionPattern(std::move(counts));
}

CircuitSpec make_circuit(std::size_t modes, unsigned photons, std::size_t depth) {
  CircuitSpec c = build_reck_slices(modes, depth);
  c.input = standard_input(modes, photons);
  return c;
}

std::vector<TwoModeGate> bind_angles(const CircuitSpec& circuit, std::span<const double> angles) {
  const std::size_t g = circuit.gates.size();
  if (angles.size() != g && angles.size() != 2 * g) {
    throw ConfigurationError("expected " + std::to_string(g) + " or " + std::to_string(2 * g) +
                             " angles, got " + std::to_string(angles.size()));
  }
  std::vector<TwoModeGate> gates = circuit.gates;
  for (std::size_t k = 0; k < g; ++k) {
    gates[k].theta = angles[k];
    gates[k].psi = angles.size() == 2 * g ? angles[g + k] : 0.0;
  }
  return gates;
}

namespace {

void check_gate(const TwoModeGate& g, std::size_t modes) {
  if (!(g.i < g.j && g.j < modes)) {
    throw DomainError("gate modes (" + std::to_string(g.i) + ", " + std::to_string(g.j) +
                      ") invalid for M=" + std::to_string(modes));
  }
}

struct Runs {
  std::vector<std::uint32_t> indices;
  std::vector<std::uint32_t> offsets;
  std::vector<unsigned> totals;
};

// One run per assignment of the other modes: the m+1 basis indices with p photons in
// mode i and m - p in mode j, ordered by p.
Runs group_runs(const SectorBasis& basis, std::size_t i, std::size_t j) {
  Runs runs;
  for (const auto& rep : basis.patterns()) {
    if (rep[j] != 0) continue;
    const unsigned m = rep[i];
    DetectionPattern member = rep;
    runs.offsets.push_back(static_cast<std::uint32_t>(runs.indices.size()));
    runs.totals.push_back(m);
    for (unsigned p = 0; p <= m; ++p) {
      member[i] = static_cast<DetectionPattern::Count>(p);
      member[j] = static_cast<DetectionPattern::Count>(m - p);
      runs.indices.push_back(static_cast<std::uint32_t>(basis.index_of(member)));
    }
  }
  return runs;
}

void apply_runs(const std::vector<std::uint32_t>& indices, const std::vector<std::uint32_t>& offsets,
                const std::vector<unsigned>& totals, const std::vector<std::vector<Complex>>& blocks,
                std::vector<Complex>& amps) {
  std::vector<Complex> x, y;
  for (std::size_t r = 0; r < offsets.size(); ++r) {
    const unsigned m = totals[r];
    const std::uint32_t* idx = indices.data() + offsets[r];
    if (m == 0) {
      amps[idx[0]] *= blocks[0][0];
      continue;
    }
    x.resize(m + 1);
    y.assign(m + 1, Complex{});
    for (unsigned p = 0; p <= m; ++p) x[p] = amps[idx[p]];
    const auto& b = blocks[m];
    for (unsigned q = 0; q <= m; ++q) {
      Complex acc{};
      for (unsigned p = 0; p <= m; ++p) acc += b[q * (m + 1) + p] * x[p];
      y[q] = acc;
    }
    for (unsigned q = 0; q <= m; ++q) amps[idx[q]] = y[q];
  }
}

std::vector<std::vector<Complex>> blocks_up_to(const TwoModeGate& g, unsigned n) {
  std::vector<std::vector<Complex>> blocks(n + 1);
  for (unsigned m = 0; m <= n; ++m) blocks[m] = two_mode_block(g.theta, g.psi, m);
  return blocks;
}

std::shared_ptr<const SectorBasis> dense_basis(std::size_t modes, unsigned photons) {
  return std::make_shared<const SectorBasis>(enumerate_basis(modes, photons));
}

}  // namespace

QuantumState QuantumState::basis_state(const DetectionPattern& p, Storage storage) {
  if (p.modes() == 0) throw DomainError("invalid dimension: M must be at least 1");
  QuantumState s;
  s.modes_ = p.modes();
  s.photons_ = p.photons();
  bool dense = storage == Storage::Dense;
  if (storage == Storage::Automatic) {
    try {
      dense = sector_size(s.modes_, s.photons_) <= kDenseSectorLimit;
    } catch (const RefusalError&) {
      dense = false;
    }
  }
  if (dense) {
    s.basis_ = dense_basis(s.modes_, s.photons_);
    s.dense_.assign(s.basis_->size(), Complex{});
    s.dense_[s.basis_->index_of(p)] = 1.0;
  } else {
    s.sparse_.emplace(p, 1.0);
  }
  return s;
}

Complex QuantumState::amplitude(const DetectionPattern& p) const {
  if (p.modes() != modes_ || p.photons() != photons_) {
    throw DomainError("pattern " + p.to_string() + " is outside the state's sector");
  }
  if (basis_) return dense_[basis_->index_of(p)];
  auto it = sparse_.find(p);
  return it == sparse_.end() ? Complex{} : it->second;
}

double QuantumState::norm_squared() const {
  double acc = 0.0;
  if (basis_) {
    for (const auto& a : dense_) acc += std::norm(a);
  } else {
    for (const auto& [p, a] : sparse_) acc += std::norm(a);
  }
  return acc;
}

std::vector<std::pair<DetectionPattern, Complex>> QuantumState::entries() const {
  std::vector<std::pair<DetectionPattern, Complex>> out;
  if (basis_) {
    for (std::size_t k = 0; k < dense_.size(); ++k) {
      if (dense_[k] != Complex{}) out.emplace_back(basis_->patterns()[k], dense_[k]);
    }
  } else {
    for (const auto& [p, a] : sparse_) {
      if (a != Complex{}) out.emplace_back(p, a);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  }
  return out;
}

const SectorBasis& QuantumState::basis() const {
  if (!basis_) throw ConfigurationError("state is stored sparsely");
  return *basis_;
}

const std::vector<Complex>& QuantumState::dense_amplitudes() const {
  if (!basis_) throw ConfigurationError("state is stored sparsely");
  return dense_;
}

QuantumState apply_gate(const QuantumState& state, const TwoModeGate& g) {
  check_gate(g, state.modes_);
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw NumericIntegrityError("state norm " + std::to_string(norm) + " deviates from 1");
  }
  QuantumState out = state;
  if (state.basis_) {
    const Runs runs = group_runs(*state.basis_, g.i, g.j);
    apply_runs(runs.indices, runs.offsets, runs.totals, blocks_up_to(g, state.photons_), out.dense_);
    return out;
  }
  // Sparse: collect amplitudes by the pattern with mode i holding m and mode j empty.
  std::map<DetectionPattern, std::vector<Complex>> groups;
  for (const auto& [p, a] : state.sparse_) {
    const unsigned m = p[g.i] + p[g.j];
    DetectionPattern key = p;
    key[g.i] = static_cast<DetectionPattern::Count>(m);
    key[g.j] = 0;
    auto& v = groups[key];
    v.resize(m + 1);
    v[p[g.i]] = a;
  }
  out.sparse_.clear();
  std::vector<std::vector<Complex>> blocks(state.photons_ + 1);
  for (const auto& [key, x] : groups) {
    const unsigned m = key[g.i];
    if (blocks[m].empty()) blocks[m] = two_mode_block(g.theta, g.psi, m);
    DetectionPattern member = key;
    for (unsigned q = 0; q <= m; ++q) {
      Complex acc{};
      for (unsigned p = 0; p <= m; ++p) acc += blocks[m][q * (m + 1) + p] * x[p];
      if (acc == Complex{}) continue;
      member[g.i] = static_cast<DetectionPattern::Count>(q);
      member[g.j] = static_cast<DetectionPattern::Count>(m - q);
      out.sparse_[member] = acc;
    }
  }
  return out;
}

QuantumState evolve(const CircuitSpec& circuit, std::span<const double> angles) {
  if (circuit.input.modes() != circuit.modes) {
    throw ConfigurationError("input pattern has " + std::to_string(circuit.input.modes()) +
                             " modes, circuit has " + std::to_string(circuit.modes));
  }
  const auto gates = bind_angles(circuit, angles);
  QuantumState state = QuantumState::basis_state(circuit.input);
  if (state.is_dense()) return CircuitSimulator(circuit).evolve(angles);
  for (const auto& g : gates) state = apply_gate(state, g);
  return state;
}

double PatternDistribution::total() const {
  double acc = 0.0;
  for (double p : probabilities) acc += p;
  return acc;
}

PatternDistribution exact_distribution(const QuantumState& state) {
  PatternDistribution d;
  if (state.is_dense()) {
    d.patterns = state.basis().patterns();
    d.probabilities.reserve(d.patterns.size());
    for (const auto& a : state.dense_amplitudes()) d.probabilities.push_back(std::norm(a));
    return d;
  }
  for (const auto& [p, a] : state.entries()) {
    d.patterns.push_back(p);
    d.probabilities.push_back(std::norm(a));
  }
  return d;
}

std::vector<DetectionPattern> support(const QuantumState& state, double tol) {
  std::vector<DetectionPattern> out;
  for (const auto& [p, a] : state.entries()) {
    if (std::norm(a) > tol) out.push_back(p);
  }
  return out;
}

Eigen::MatrixXcd transfer_matrix(const CircuitSpec& circuit, std::span<const double> angles) {
  const auto gates = bind_angles(circuit, angles);
  const auto m = static_cast<Eigen::Index>(circuit.modes);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(m, m);
  for (const auto& g : gates) {
    check_gate(g, circuit.modes);
    const auto e = gate_transfer(g.theta, g.psi);
    const Eigen::VectorXcd ci = t.col(static_cast<Eigen::Index>(g.i));
    const Eigen::VectorXcd cj = t.col(static_cast<Eigen::Index>(g.j));
    t.col(static_cast<Eigen::Index>(g.i)) = ci * e[0] + cj * e[2];
    t.col(static_cast<Eigen::Index>(g.j)) = ci * e[1] + cj * e[3];
  }
  return t;
}

double schwinger_expectation(const CircuitSpec& circuit, std::span<const double> angles,
                             const Eigen::MatrixXcd& observable) {
  const auto m = static_cast<Eigen::Index>(circuit.modes);
  if (observable.rows() != m || observable.cols() != m) {
    throw DomainError("observable must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw DomainError("observable is not Hermitian");
  }
  // Heisenberg picture: U^dagger a U = T^dagger a, so the expectation is
  // sum_a n_a (T O T^dagger)_aa.
  const Eigen::MatrixXcd t = transfer_matrix(circuit, angles);
  const Eigen::MatrixXcd rotated = t * observable * t.adjoint();
  double acc = 0.0;
  for (Eigen::Index a = 0; a < m; ++a) acc += circuit.input[static_cast<std::size_t>(a)] * rotated(a, a).real();
  return acc;
}

CircuitSimulator::CircuitSimulator(CircuitSpec circuit) : circuit_(std::move(circuit)) {
  if (circuit_.input.modes() != circuit_.modes) {
    throw ConfigurationError("input pattern does not match the circuit's mode count");
  }
  const unsigned n = circuit_.input.photons();
  if (sector_size(circuit_.modes, n) > kDenseSectorLimit) {
    throw RefusalError("sector (M=" + std::to_string(circuit_.modes) + ", n=" + std::to_string(n) +
                       ") exceeds the dense limit " + std::to_string(kDenseSectorLimit));
  }
  basis_ = dense_basis(circuit_.modes, n);
  input_index_ = basis_->index_of(circuit_.input);
  for (const auto& g : circuit_.gates) {
    check_gate(g, circuit_.modes);
    std::size_t slot = groups_.size();
    for (std::size_t k = 0; k < groups_.size(); ++k) {
      if (groups_[k].i == g.i && groups_[k].j == g.j) slot = k;
    }
    if (slot == groups_.size()) {
      Runs runs = group_runs(*basis_, g.i, g.j);
      groups_.push_back({g.i, g.j, std::move(runs.indices), std::move(runs.offsets), std::move(runs.totals)});
    }
    gate_group_.push_back(slot);
  }
}

void CircuitSimulator::evolve_into(std::span<const double> angles, std::vector<Complex>& amplitudes) const {
  const auto gates = bind_angles(circuit_, angles);
  const unsigned n = circuit_.input.photons();
  amplitudes.assign(basis_->size(), Complex{});
  amplitudes[input_index_] = 1.0;
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& grp = groups_[gate_group_[k]];
    apply_runs(grp.indices, grp.offsets, grp.totals, blocks_up_to(gates[k], n), amplitudes);
  }
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (!(std::abs(norm - 1.0) <= 1e-9)) {
    throw NumericIntegrityError("evolved state norm " + std::to_string(norm) + " deviates from 1");
  }
}

QuantumState CircuitSimulator::evolve(std::span<const double> angles) const {
  QuantumState s;
  s.modes_ = circuit_.modes;
  s.photons_ = circuit_.input.photons();
  s.basis_ = basis_;
  evolve_into(angles, s.dense_);
  return s;
}

}  // namespace bosonic
