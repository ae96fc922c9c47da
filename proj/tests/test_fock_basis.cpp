#include <gtest/gtest.h>

#include <set>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/fock_basis.hpp"
#include "oracles.hpp"

using namespace bosonic;

TEST(Combinatorics, BinomialValues) {
  EXPECT_EQ(binomial(0, 0), 1u);
  EXPECT_EQ(binomial(7, 3), 35u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(26, 19), 657800u);
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ull);
  EXPECT_THROW(binomial(68, 34), RefusalError);
  EXPECT_EQ(binomial_or_zero(5, -1), 0u);
  EXPECT_EQ(binomial_or_zero(-1, 0), 0u);
  EXPECT_EQ(catalan_number(4), 14u);
}

TEST(Combinatorics, PascalRecurrence) {
  for (std::uint64_t n = 1; n < 60; ++n) {
    for (std::uint64_t k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST(FockBasis, SectorSizes) {
  EXPECT_EQ(sector_size(4, 3), 20u);
  EXPECT_EQ(sector_size(1, 5), 1u);
  EXPECT_EQ(sector_size(5, 0), 1u);
  EXPECT_EQ(enumerate_basis(4, 3).patterns().size(), 20u);
}

TEST(FockBasis, CanonicalOrderIsDescendingLexicographic) {
  const auto b = enumerate_basis(3, 2);
  ASSERT_EQ(b.patterns().size(), 6u);
  EXPECT_EQ(b.patterns().front(), (DetectionPattern{2, 0, 0}));
  EXPECT_EQ(b.patterns().back(), (DetectionPattern{0, 0, 2}));
  for (std::size_t k = 1; k < b.patterns().size(); ++k) EXPECT_GT(b.patterns()[k - 1], b.patterns()[k]);
}

TEST(FockBasis, MatchesRecursiveEnumeration) {
  for (std::size_t m = 1; m <= 6; ++m) {
    for (unsigned n = 0; n <= 6; ++n) {
      std::vector<DetectionPattern> expected;
      oracle::compositions(m, n, expected);
      const auto b = enumerate_basis(m, n);
      ASSERT_EQ(b.patterns(), expected) << "M=" << m << " n=" << n;
    }
  }
}

TEST(FockBasis, RankUnrankRoundTrip) {
  for (std::size_t m = 1; m <= 7; ++m) {
    for (unsigned n = 0; n <= 7; ++n) {
      const SectorBasis b(m, n);
      for (std::uint64_t k = 0; k < b.size(); ++k) {
        const auto p = index_to_pattern(b, k);
        ASSERT_EQ(p.photons(), n);
        ASSERT_EQ(pattern_to_index(b, p), k);
      }
    }
  }
}

TEST(FockBasis, LargeSectorIndexingWithoutMaterializing) {
  // binom(66, 33) is just below 2^63.
  const SectorBasis b(34, 33);
  EXPECT_EQ(b.size(), binomial(66, 33));
  std::vector<DetectionPattern::Count> counts(34, 1);
  counts.back() = 0;
  const DetectionPattern p(counts);
  const auto k = b.index_of(p);
  EXPECT_EQ(b.pattern_at(k), p);
  EXPECT_EQ(b.pattern_at(b.size() - 1), b.pattern_at(b.index_of(b.pattern_at(b.size() - 1))));
  EXPECT_TRUE(b.patterns().empty());
  EXPECT_THROW(SectorBasis(70, 70), Error);
}

TEST(FockBasis, RejectsForeignPatterns) {
  const SectorBasis b(3, 2);
  EXPECT_FALSE(b.contains(DetectionPattern{1, 1, 1}));
  EXPECT_FALSE(b.contains(DetectionPattern{1, 1}));
  EXPECT_THROW(b.index_of(DetectionPattern{1, 1, 1}), DomainError);
  EXPECT_THROW(b.pattern_at(6), DomainError);
}

TEST(FockBasis, PatternText) { EXPECT_EQ((DetectionPattern{1, 0, 2}).to_string(), "(1,0,2)"); }
