#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bosonic/errors.hpp"
#include "bosonic/io.hpp"
#include "bosonic/problems.hpp"
#include "bosonic/random.hpp"

using namespace bosonic;

namespace {

Eigen::MatrixXd random_matrix(std::size_t n, RandomStream& rng) {
  Eigen::MatrixXd q(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) q(a, b) = rng.normal();
  }
  return q;
}

std::vector<double> all_energies(const ProblemSpec& p) {
  const auto e = bitstring_energy(p);
  const auto n = problem_dimension(p);
  std::vector<double> out;
  for (std::uint64_t c = 0; c < (1ull << n); ++c) out.push_back(e(BitString::from_code(c, n)));
  return out;
}

const std::string kDataDir = BOSONIC_DATA_DIR;

}  // namespace

TEST(Qubo, EnergyAndSymmetrization) {
  Eigen::MatrixXd q(2, 2);
  q << 1, 4, 0, -2;
  const QuboProblem p(q);
  EXPECT_DOUBLE_EQ(p.matrix()(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(qubo_energy(p, BitString::from_string("11")), 3.0);
  EXPECT_DOUBLE_EQ(qubo_energy(p, BitString::from_string("01")), -2.0);
  EXPECT_THROW(qubo_energy(p, BitString::from_string("1")), DomainError);
  EXPECT_THROW(QuboProblem(Eigen::MatrixXd(2, 3)), DomainError);
}

TEST(Qubo, IsingMapPreservesEveryEnergy) {
  RandomStream rng(2);
  for (std::size_t n : {1u, 2u, 5u, 8u}) {
    const QuboProblem q(random_matrix(n, rng));
    const auto ising = qubo_to_ising(q);
    for (std::uint64_t c = 0; c < (1ull << n); ++c) {
      const auto b = BitString::from_code(c, n);
      EXPECT_NEAR(qubo_energy(q, b), ising_energy(ising, bits_to_spins(b)), 1e-12);
    }
  }
}

TEST(Qubo, OneByOneConstant) {
  Eigen::MatrixXd q(1, 1);
  q << 3.0;
  const auto ising = qubo_to_ising(QuboProblem(q));
  EXPECT_DOUBLE_EQ(ising.constant, 1.5);
  EXPECT_DOUBLE_EQ(ising.fields(0), 1.5);
}

TEST(Qubo, SixBySixLowestEnergies) {
  const auto q = read_qubo(kDataDir + "/qubo_6x6.csv");
  const auto r = brute_force_min(ProblemSpec{q}, 3);
  ASSERT_EQ(r.lowest.size(), 3u);
  EXPECT_NEAR(r.lowest[0].first, -7.92, 0.005);
  EXPECT_NEAR(r.lowest[1].first, -7.30, 0.005);
  EXPECT_NEAR(r.lowest[2].first, -5.89, 0.005);
  EXPECT_EQ(r.argmin.to_string(), "111111");
  EXPECT_EQ(r.lowest[1].second.to_string(), "110111");
  auto sorted = all_energies(ProblemSpec{q});
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(r.lowest[k].first, sorted[k]);
}

TEST(Qubo, ElevenByElevenLoads) {
  const auto q = read_qubo(kDataDir + "/qubo_11x11.csv");
  EXPECT_EQ(q.dimension(), 11u);
  EXPECT_DOUBLE_EQ(q.matrix()(0, 0), -0.128);
  EXPECT_DOUBLE_EQ(q.matrix()(10, 10), 0.096);
}

TEST(BruteForce, AgreesWithFullScan) {
  RandomStream rng(9);
  for (std::size_t n : {3u, 7u, 12u}) {
    const ProblemSpec p{QuboProblem(random_matrix(n, rng))};
    auto all = all_energies(p);
    std::sort(all.begin(), all.end());
    const auto r = brute_force_min(p, 4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.lowest[k].first, all[k], 1e-12);
  }
  EXPECT_THROW(brute_force_min(ProblemSpec{MobiusProblem(28, 1.0, 0.1)}), RefusalError);
}

TEST(Mobius, ClosedFormEqualsBruteForce) {
  for (std::size_t n = 4; n <= 16; n += 2) {
    for (double ja : {0.25, 0.5, 1.0, 2.0}) {
      for (double jb : {-2.0, -1.0, -0.2, 0.0, 0.3, 1.0, 2.0}) {
        const MobiusProblem m(n, ja, jb);
        EXPECT_NEAR(mobius_min(m), brute_force_min(ProblemSpec{m}, 1).energy, 1e-12)
            << "n=" << n << " ja=" << ja << " jb=" << jb;
      }
    }
  }
}

TEST(Mobius, SeventySpinInstance) { EXPECT_DOUBLE_EQ(mobius_min(MobiusProblem(70, 0.5, -0.2)), -40.0); }

TEST(Mobius, Validation) {
  EXPECT_THROW(MobiusProblem(7, 1.0, 0.0), DomainError);
  EXPECT_THROW(MobiusProblem(2, 1.0, 0.0), DomainError);
  EXPECT_THROW(mobius_min(MobiusProblem(8, 0.0, 0.1)), DomainError);
}

TEST(Mobius, IsingFormMatches) {
  const MobiusProblem m(10, 0.7, -0.3);
  const auto is = mobius_to_ising(m);
  for (std::uint64_t c = 0; c < 1024; ++c) {
    const auto s = bits_to_spins(BitString::from_code(c, 10));
    EXPECT_NEAR(mobius_energy(m, s), ising_energy(is, s), 1e-12);
  }
}

TEST(Portfolio, Validation) {
  Eigen::VectorXd mu(2);
  mu << 0.1, 0.2;
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;  // eigenvalue -1
  EXPECT_THROW(make_portfolio(mu, bad, 1.0, 1, PortfolioApproach::Normalized), DomainError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.1, 0, 1;
  EXPECT_THROW(make_portfolio(mu, asym, 1.0, 1, PortfolioApproach::Normalized), DomainError);
  EXPECT_THROW(make_portfolio(mu, Eigen::MatrixXd::Identity(2, 2), -1.0, 1, PortfolioApproach::Normalized),
               DomainError);
  const auto p = make_portfolio(mu, Eigen::MatrixXd::Identity(2, 2), 1.0, 1, PortfolioApproach::PenaltyQubo);
  EXPECT_DOUBLE_EQ(p.penalty_b, 1e3);
}

TEST(Portfolio, EncodingAndSubspace) {
  const auto w = binary_encode_weights(BitString::from_string("110001"), 3, 2);
  EXPECT_NEAR(w(0), 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(w(1), 4.0 / 7.0, 1e-15);
  EXPECT_THROW(binary_encode_weights(BitString::from_string("11"), 3, 2), DomainError);
  EXPECT_EQ(portfolio_subspace_count(20, 3), 657800u);
  // Brute-force count of encodings whose weights sum to one.
  std::uint64_t count = 0;
  for (std::uint64_t c = 0; c < (1u << 9); ++c) {
    count += std::abs(binary_encode_weights(BitString::from_code(c, 9), 3, 3).sum() - 1.0) < 1e-12;
  }
  EXPECT_EQ(count, portfolio_subspace_count(3, 3));
}

TEST(Portfolio, NormalizedObjectiveIsScaleInvariant) {
  RandomStream rng(4);
  const auto stats = portfolio_returns_from_prices(synthetic_prices(6, 300, 2));
  const auto p = make_portfolio(stats.mu, stats.sigma, 1.0, 2, PortfolioApproach::Normalized);
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd w(6);
    for (int a = 0; a < 6; ++a) w(a) = rng.uniform();
    const double e = portfolio_energy_normalized(p, w);
    for (double scale : {0.1, 3.0, 17.0}) EXPECT_NEAR(portfolio_energy_normalized(p, scale * w), e, 1e-12);
  }
  EXPECT_DOUBLE_EQ(portfolio_energy_normalized(p, Eigen::VectorXd::Zero(6)), p.zero_penalty);
}

TEST(Portfolio, ReturnsFromPrices) {
  PriceTable t;
  t.assets = {"A", "B"};
  t.dates = {"d1", "d2", "d3"};
  t.prices.resize(3, 2);
  t.prices << 100, 50, 110, 50, 121, 55;
  const auto s = portfolio_returns_from_prices(t);
  EXPECT_NEAR(s.mu(0), std::log(1.1) * 250, 1e-12);
  EXPECT_NEAR(s.mu(1), std::log(1.1) / 2 * 250, 1e-12);
  EXPECT_NEAR(s.sigma(0, 0), 0.0, 1e-12);
  const double half = std::log(1.1) / 2;
  EXPECT_NEAR(s.sigma(1, 1), 2 * half * half * 250, 1e-12);  // unbiased, n - 1 = 1
}

TEST(Portfolio, BadPricesNameTheRow) {
  PriceTable t;
  t.assets = {"A"};
  t.dates = {"2020-01-01", "2020-01-02", "2020-01-03"};
  t.prices.resize(3, 1);
  t.prices << 10, -1, 12;
  try {
    portfolio_returns_from_prices(t);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("2020-01-02"), std::string::npos);
  }
  t.prices << 10, std::nan(""), 12;
  EXPECT_THROW(portfolio_returns_from_prices(t), DataError);
}

TEST(Portfolio, SyntheticPricesDeterministic) {
  const auto a = synthetic_prices(4, 50, 7), b = synthetic_prices(4, 50, 7), c = synthetic_prices(4, 50, 8);
  EXPECT_EQ(a.prices, b.prices);
  EXPECT_NE(a.prices, c.prices);
  EXPECT_GT(a.prices.minCoeff(), 0.0);
}
