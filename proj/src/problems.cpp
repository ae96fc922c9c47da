#include "bosonic/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/random.hpp"

namespace bosonic {

QuboProblem::QuboProblem(Eigen::MatrixXd q) {
  if (q.rows() != q.cols() || q.rows() == 0) throw DomainError("QUBO matrix must be square and non-empty");
  if (!q.allFinite()) throw DomainError("QUBO matrix has non-finite entries");
  q_ = (q + q.transpose()) / 2.0;
}

MobiusProblem::MobiusProblem(std::size_t spins, double ja, double jb) : n_(spins), ja_(ja), jb_(jb) {
  if (spins < 4 || spins % 2 != 0) {
    throw DomainError("Moebius ladder needs an even spin count >= 4, got " + std::to_string(spins));
  }
}

void validate(const PortfolioProblem& p) {
  const auto n = p.mu.size();
  if (n == 0 || p.sigma.rows() != n || p.sigma.cols() != n) throw DomainError("mu and Sigma dimensions disagree");
  if (!p.mu.allFinite() || !p.sigma.allFinite()) throw DomainError("portfolio data has non-finite entries");
  if ((p.sigma - p.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9) throw DomainError("Sigma is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.sigma, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) throw DomainError("Sigma is not positive semidefinite");
  if (!(p.gamma >= 0.0)) throw DomainError("risk aversion gamma must be >= 0");
  if (p.bits_per_asset < 1 || p.bits_per_asset > 16) throw DomainError("bits per asset must be in [1, 16]");
}

PortfolioProblem make_portfolio(Eigen::VectorXd mu, Eigen::MatrixXd sigma, double gamma, unsigned bits_per_asset,
                                PortfolioApproach approach) {
  PortfolioProblem p;
  p.mu = std::move(mu);
  p.sigma = std::move(sigma);
  p.gamma = gamma;
  p.bits_per_asset = bits_per_asset;
  p.approach = approach;
  validate(p);
  const double scale = std::max(p.mu.cwiseAbs().maxCoeff(), p.sigma.cwiseAbs().maxCoeff());
  p.penalty_b = 1e3 * scale;
  p.zero_penalty = 1e3 * scale;
  return p;
}

std::size_t problem_dimension(const ProblemSpec& problem) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MobiusProblem>) {
          return p.spins();
        } else {
          return p.dimension();
        }
      },
      problem);
}

std::string problem_kind(const ProblemSpec& problem) {
  static const char* names[] = {"qubo", "ising", "mobius", "portfolio"};
  return names[problem.index()];
}

double qubo_energy(const QuboProblem& q, const BitString& x) {
  const auto n = q.dimension();
  if (x.size() != n) throw DomainError("bit string length " + std::to_string(x.size()) + " != " + std::to_string(n));
  double e = 0.0;
  const auto& m = q.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j]) e += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return e;
}

IsingProblem qubo_to_ising(const QuboProblem& q) {
  const auto& m = q.matrix();
  const auto n = m.rows();
  IsingProblem p;
  p.couplings = Eigen::MatrixXd::Zero(n, n);
  p.fields = Eigen::VectorXd::Zero(n);
  // x = (s + 1)/2 expands x^T Q x into pair, field and constant terms.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) p.couplings(i, j) = m(i, j) / 2.0;
    p.fields(i) = m.row(i).sum() / 2.0;
  }
  p.constant = (m.sum() + m.trace()) / 4.0;
  return p;
}

double ising_energy(const IsingProblem& p, const std::vector<int>& spins) {
  const auto n = p.fields.size();
  if (static_cast<Eigen::Index>(spins.size()) != n) throw DomainError("spin vector length mismatch");
  double e = p.constant;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int si = spins[static_cast<std::size_t>(i)];
    if (si != 1 && si != -1) throw DomainError("spins must be +1 or -1");
    e += p.fields(i) * si;
    for (Eigen::Index j = i + 1; j < n; ++j) e += p.couplings(i, j) * si * spins[static_cast<std::size_t>(j)];
  }
  return e;
}

std::vector<int> bits_to_spins(const BitString& b) {
  std::vector<int> s(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) s[k] = 2 * b[k] - 1;
  return s;
}

double mobius_energy(const MobiusProblem& p, const std::vector<int>& spins) {
  const std::size_t n = p.spins();
  if (spins.size() != n) throw DomainError("spin vector length mismatch");
  for (int s : spins) {
    if (s != 1 && s != -1) throw DomainError("spins must be +1 or -1");
  }
  double ring = 0.0, rungs = 0.0;
  for (std::size_t i = 0; i < n; ++i) ring += spins[i] * spins[(i + 1) % n];
  for (std::size_t i = 0; i < n / 2; ++i) rungs += spins[i] * spins[i + n / 2];
  return -p.ja() * ring - p.jb() * rungs;
}

double mobius_min(const MobiusProblem& p) {
  if (!(p.ja() > 0.0)) throw DomainError("closed-form Moebius minimum requires J_a > 0");
  const double n = static_cast<double>(p.spins());
  return std::min(-n * p.ja() - n * p.jb() / 2.0, (4.0 - n) * p.ja() + n * p.jb() / 2.0);
}

IsingProblem mobius_to_ising(const MobiusProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.spins());
  IsingProblem is;
  is.couplings = Eigen::MatrixXd::Zero(n, n);
  is.fields = Eigen::VectorXd::Zero(n);
  auto add = [&](Eigen::Index a, Eigen::Index b, double v) { is.couplings(std::min(a, b), std::max(a, b)) += v; };
  for (Eigen::Index i = 0; i < n; ++i) add(i, (i + 1) % n, -p.ja());
  for (Eigen::Index i = 0; i < n / 2; ++i) add(i, i + n / 2, -p.jb());
  return is;
}

namespace {

double portfolio_bit_energy(const PortfolioProblem& p, const BitString& b) {
  const Eigen::VectorXd w = binary_encode_weights(b, p.bits_per_asset, p.assets());
  return p.approach == PortfolioApproach::Normalized ? portfolio_energy_normalized(p, w)
                                                     : portfolio_energy_penalty(p, w);
}

}  // namespace

BitEnergy bitstring_energy(const ProblemSpec& problem) {
  return std::visit(
      [](const auto& p) -> BitEnergy {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuboProblem>) {
          return [p](const BitString& b) { return qubo_energy(p, b); };
        } else if constexpr (std::is_same_v<T, IsingProblem>) {
          return [p](const BitString& b) { return ising_energy(p, bits_to_spins(b)); };
        } else if constexpr (std::is_same_v<T, MobiusProblem>) {
          return [p](const BitString& b) { return mobius_energy(p, bits_to_spins(b)); };
        } else {
          return [p](const BitString& b) { return portfolio_bit_energy(p, b); };
        }
      },
      problem);
}

namespace {

// Keeps the K lowest (energy, code) pairs.
class LowestK {
 public:
  explicit LowestK(std::size_t k) : k_(k) {}
  void offer(double e, std::uint64_t code) {
    if (best_.size() < k_) {
      best_.emplace(e, code);
    } else if (std::pair(e, code) < *std::prev(best_.end())) {
      best_.erase(std::prev(best_.end()));
      best_.emplace(e, code);
    }
  }
  const std::set<std::pair<double, std::uint64_t>>& items() const { return best_; }

 private:
  std::size_t k_;
  std::set<std::pair<double, std::uint64_t>> best_;
};

// Gray-code walk over all 2^n spin configurations with local-field updates.
void gray_walk_ising(const IsingProblem& p, LowestK& keep) {
  const auto n = p.fields.size();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) j(a, b) = j(b, a) = p.couplings(a, b);
  }
  std::vector<int> s(static_cast<std::size_t>(n), -1);
  Eigen::VectorXd local = p.fields;  // h_k + sum_j J_kj s_j
  for (Eigen::Index a = 0; a < n; ++a) local(a) -= j.row(a).sum();
  double e = ising_energy(p, s);
  std::uint64_t code = 0;
  keep.offer(e, code);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto k = static_cast<Eigen::Index>(__builtin_ctzll(step));
    const int old = s[static_cast<std::size_t>(k)];
    e -= 2.0 * old * local(k);
    s[static_cast<std::size_t>(k)] = -old;
    local -= 2.0 * old * j.col(k);
    code ^= std::uint64_t{1} << k;
    keep.offer(e, code);
  }
}

}  // namespace

BruteForceResult brute_force_min(const ProblemSpec& problem, std::size_t keep_count) {
  const std::size_t n = problem_dimension(problem);
  if (n > kBruteForceMaxDimension) {
    throw RefusalError("brute force is limited to " + std::to_string(kBruteForceMaxDimension) + " variables, got " +
                       std::to_string(n));
  }
  if (keep_count == 0) keep_count = 1;
  LowestK keep(keep_count);
  // Candidate pool wider than K so that exact re-evaluation can reorder near-ties.
  LowestK pool(keep_count + 8);
  if (const auto* q = std::get_if<QuboProblem>(&problem)) {
    gray_walk_ising(qubo_to_ising(*q), pool);
  } else if (const auto* is = std::get_if<IsingProblem>(&problem)) {
    gray_walk_ising(*is, pool);
  } else if (const auto* mb = std::get_if<MobiusProblem>(&problem)) {
    gray_walk_ising(mobius_to_ising(*mb), pool);
  } else {
    const BitEnergy energy = bitstring_energy(problem);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) pool.offer(energy(BitString::from_code(code, n)), code);
  }
  const BitEnergy energy = bitstring_energy(problem);
  for (const auto& [e, code] : pool.items()) keep.offer(energy(BitString::from_code(code, n)), code);
  BruteForceResult r;
  for (const auto& [e, code] : keep.items()) r.lowest.emplace_back(e, BitString::from_code(code, n));
  r.energy = r.lowest.front().first;
  r.argmin = r.lowest.front().second;
  return r;
}

ReturnStatistics portfolio_returns_from_prices(const PriceTable& t) {
  const auto rows = t.prices.rows();
  const auto n = t.prices.cols();
  if (n == 0) throw DataError("price table has no assets");
  if (rows < 2) throw DataError("price table needs at least 2 rows, got " + std::to_string(rows));
  auto row_name = [&](Eigen::Index r) {
    return "row " + std::to_string(r + 1) + (static_cast<std::size_t>(r) < t.dates.size() ? " (" + t.dates[static_cast<std::size_t>(r)] + ")" : "");
  };
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double v = t.prices(r, c);
      if (std::isnan(v)) throw DataError("missing price at " + row_name(r));
      if (!(v > 0.0) || !std::isfinite(v)) throw DataError("non-positive price at " + row_name(r));
    }
  }
  Eigen::MatrixXd logret(rows - 1, n);
  for (Eigen::Index r = 1; r < rows; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) logret(r - 1, c) = std::log(t.prices(r, c) / t.prices(r - 1, c));
  }
  ReturnStatistics s;
  const Eigen::RowVectorXd mean = logret.colwise().mean();
  s.mu = mean.transpose() * kTradingDaysPerYear;
  if (logret.rows() < 2) {
    s.sigma = Eigen::MatrixXd::Zero(n, n);
  } else {
    const Eigen::MatrixXd centered = logret.rowwise() - mean;
    s.sigma = (centered.transpose() * centered) / static_cast<double>(logret.rows() - 1) * kTradingDaysPerYear;
  }
  return s;
}

Eigen::VectorXd binary_encode_weights(const BitString& x, unsigned bits_per_asset, std::size_t assets) {
  if (bits_per_asset == 0 || x.size() != bits_per_asset * assets) {
    throw DomainError("bit string length " + std::to_string(x.size()) + " != N * N_q = " +
                      std::to_string(bits_per_asset * assets));
  }
  const double scale = 1.0 / (std::ldexp(1.0, static_cast<int>(bits_per_asset)) - 1.0);
  Eigen::VectorXd w(static_cast<Eigen::Index>(assets));
  for (std::size_t i = 0; i < assets; ++i) {
    std::uint64_t q = 0;
    for (unsigned b = 0; b < bits_per_asset; ++b) q |= static_cast<std::uint64_t>(x[i * bits_per_asset + b]) << b;
    w(static_cast<Eigen::Index>(i)) = static_cast<double>(q) * scale;
  }
  return w;
}

double portfolio_energy_penalty(const PortfolioProblem& p, const Eigen::VectorXd& w) {
  const double excess = w.sum() - 1.0;
  return -w.dot(p.mu) + p.gamma * w.dot(p.sigma * w) + p.penalty_b * excess * excess;
}

double portfolio_energy_normalized(const PortfolioProblem& p, const Eigen::VectorXd& w) {
  const double total = w.sum();
  if (total == 0.0) return p.zero_penalty;
  return -w.dot(p.mu) / total + p.gamma * w.dot(p.sigma * w) / (total * total);
}

std::pair<double, double> portfolio_return_risk(const PortfolioProblem& p, const Eigen::VectorXd& w) {
  const double total = w.sum();
  if (total == 0.0) return {0.0, 0.0};
  const Eigen::VectorXd u = w / total;
  return {u.dot(p.mu), std::sqrt(std::max(0.0, u.dot(p.sigma * u)))};
}

std::uint64_t portfolio_subspace_count(std::size_t assets, unsigned bits_per_asset) {
  if (assets == 0 || bits_per_asset == 0 || bits_per_asset > 32) throw DomainError("invalid portfolio encoding");
  const std::uint64_t top = (std::uint64_t{1} << bits_per_asset) - 1;
  return binomial(top + assets - 1, assets - 1);
}

PriceTable synthetic_prices(std::size_t assets, std::size_t days, std::uint64_t seed) {
  if (assets == 0 || days < 2) throw DomainError("synthetic prices need at least one asset and two days");
  RandomStream rng(derive_seed(seed, {0x5052494345ULL}));
  std::vector<double> drift(assets), vol(assets), beta(assets);
  for (std::size_t a = 0; a < assets; ++a) {
    drift[a] = -0.05 + 0.35 * rng.uniform();  // annual
    vol[a] = 0.15 + 0.35 * rng.uniform();
    beta[a] = 0.2 + 0.6 * rng.uniform();
  }
  PriceTable t;
  for (std::size_t a = 0; a < assets; ++a) t.assets.push_back("A" + std::to_string(a + 1));
  t.prices.resize(static_cast<Eigen::Index>(days), static_cast<Eigen::Index>(assets));
  const double dt = 1.0 / kTradingDaysPerYear;
  for (std::size_t a = 0; a < assets; ++a) t.prices(0, static_cast<Eigen::Index>(a)) = 50.0 + 100.0 * rng.uniform();
  for (std::size_t d = 1; d < days; ++d) {
    const double market = rng.normal();
    for (std::size_t a = 0; a < assets; ++a) {
      const double z = beta[a] * market + std::sqrt(1.0 - beta[a] * beta[a]) * rng.normal();
      const double step = (drift[a] - 0.5 * vol[a] * vol[a]) * dt + vol[a] * std::sqrt(dt) * z;
      const auto r = static_cast<Eigen::Index>(d), c = static_cast<Eigen::Index>(a);
      t.prices(r, c) = t.prices(r - 1, c) * std::exp(step);
    }
  }
  for (std::size_t d = 0; d < days; ++d) t.dates.push_back("d" + std::to_string(d + 1));
  return t;
}

}  // namespace bosonic
