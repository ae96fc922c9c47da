#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bosonic/bitstring.hpp"

namespace bosonic {

/// min x^T Q x over bit vectors; Q is symmetrized as (Q + Q^T)/2 on construction.
class QuboProblem {
 public:
  explicit QuboProblem(Eigen::MatrixXd q);
  const Eigen::MatrixXd& matrix() const noexcept { return q_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(q_.rows()); }

 private:
  Eigen::MatrixXd q_;
};

/// H = sum_{i<j} J_ij s_i s_j + sum_k h_k s_k + constant. Only the strict upper triangle of J is used.
struct IsingProblem {
  Eigen::MatrixXd couplings;
  Eigen::VectorXd fields;
  double constant = 0.0;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(fields.size()); }
};

/// Twisted ladder: ring couplings J_a and rung couplings J_b between s_i and s_{i+n/2}.
class MobiusProblem {
 public:
  MobiusProblem(std::size_t spins, double ja, double jb);
  std::size_t spins() const noexcept { return n_; }
  double ja() const noexcept { return ja_; }
  double jb() const noexcept { return jb_; }

 private:
  std::size_t n_;
  double ja_, jb_;
};

enum class PortfolioApproach { PenaltyQubo, Normalized };

struct PortfolioProblem {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  double gamma = 1.0;
  unsigned bits_per_asset = 1;
  PortfolioApproach approach = PortfolioApproach::Normalized;
  double penalty_b = 0.0;     // weight of (sum w - 1)^2
  double zero_penalty = 0.0;  // energy of the empty allocation

  std::size_t assets() const noexcept { return static_cast<std::size_t>(mu.size()); }
  std::size_t dimension() const noexcept { return assets() * bits_per_asset; }
};

/// Fills both penalties with 1e3 x the largest |entry| of mu and Sigma and validates.
PortfolioProblem make_portfolio(Eigen::VectorXd mu, Eigen::MatrixXd sigma, double gamma, unsigned bits_per_asset,
                                PortfolioApproach approach);
/// Throws DomainError unless Sigma is symmetric PSD within 1e-9, gamma >= 0 and N_q >= 1.
void validate(const PortfolioProblem& p);

using ProblemSpec = std::variant<QuboProblem, IsingProblem, MobiusProblem, PortfolioProblem>;

std::size_t problem_dimension(const ProblemSpec& problem);
std::string problem_kind(const ProblemSpec& problem);

/// Energy of a measured bit string; spins are s = 2b - 1 for Ising and Moebius problems.
using BitEnergy = std::function<double(const BitString&)>;
BitEnergy bitstring_energy(const ProblemSpec& problem);

double qubo_energy(const QuboProblem& q, const BitString& x);
IsingProblem qubo_to_ising(const QuboProblem& q);
double ising_energy(const IsingProblem& p, const std::vector<int>& spins);
std::vector<int> bits_to_spins(const BitString& b);

double mobius_energy(const MobiusProblem& p, const std::vector<int>& spins);
/// min(-n J_a - n J_b / 2, (4 - n) J_a + n J_b / 2); throws DomainError unless J_a > 0.
double mobius_min(const MobiusProblem& p);
IsingProblem mobius_to_ising(const MobiusProblem& p);

struct BruteForceResult {
  double energy = 0.0;
  BitString argmin;
  std::vector<std::pair<double, BitString>> lowest;  // ascending, ties by code
};

inline constexpr std::size_t kBruteForceMaxDimension = 26;

/// Exhaustive search keeping the K lowest configurations. Throws RefusalError above 26 bits.
BruteForceResult brute_force_min(const ProblemSpec& problem, std::size_t keep = 3);

/// Daily closes, one column per asset. A NaN marks a missing value.
struct PriceTable {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  Eigen::MatrixXd prices;  // rows = dates
};

struct ReturnStatistics {
  Eigen::VectorXd mu;     // mean daily log return x 250
  Eigen::MatrixXd sigma;  // unbiased daily covariance x 250
};

inline constexpr double kTradingDaysPerYear = 250.0;

/// Throws DataError naming the offending row for missing or non-positive prices.
ReturnStatistics portfolio_returns_from_prices(const PriceTable& prices);

/// omega_i = q_i / (2^{N_q} - 1) with q_i = sum_b 2^b x_{i N_q + b}.
Eigen::VectorXd binary_encode_weights(const BitString& x, unsigned bits_per_asset, std::size_t assets);

double portfolio_energy_penalty(const PortfolioProblem& p, const Eigen::VectorXd& w);
double portfolio_energy_normalized(const PortfolioProblem& p, const Eigen::VectorXd& w);

/// Return w^T mu and risk sqrt(w^T Sigma w) of the allocation normalized to sum 1 (zero if empty).
std::pair<double, double> portfolio_return_risk(const PortfolioProblem& p, const Eigen::VectorXd& w);

/// Bit strings whose encoded weights sum to exactly 1: binom(2^{N_q} - 1 + N - 1, N - 1).
std::uint64_t portfolio_subspace_count(std::size_t assets, unsigned bits_per_asset);

/// Geometric Brownian prices with a one-factor correlation, deterministic in seed.
PriceTable synthetic_prices(std::size_t assets, std::size_t days, std::uint64_t seed);

}  // namespace bosonic
