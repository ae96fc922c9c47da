#include <gtest/gtest.h>

#include <set>

#include "bosonic/errors.hpp"
#include "bosonic/lattice.hpp"
#include "bosonic/parity.hpp"

using namespace bosonic;

namespace {

// Reflection-principle free count: dynamic programming over heights.
std::uint64_t dp_paths(long k, long d1, long d2) {
  std::vector<std::uint64_t> h(k + d1 + 2, 0);
  h[d1] = 1;
  for (long s = 0; s < k; ++s) {
    std::vector<std::uint64_t> next(h.size(), 0);
    for (std::size_t y = 0; y + 1 < h.size(); ++y) {
      if (!h[y]) continue;
      next[y + 1] += h[y];
      if (y > 0) next[y - 1] += h[y];
    }
    h = next;
  }
  return d2 < static_cast<long>(h.size()) ? h[d2] : 0;
}

}  // namespace

TEST(Dyck, ReferenceCounts) {
  EXPECT_EQ(dyck_count({7, 2, 1}), 28u);
  EXPECT_EQ(dyck_count({6, 2, 2}), 19u);
  EXPECT_EQ(dyck_count({6, 1, 1}), 14u);
  EXPECT_EQ(dyck_count({6, 3, 3}), 20u);
  EXPECT_EQ(dyck_count({8, 0, 0}), 14u);
}

TEST(Dyck, ClosedFormMatchesDynamicProgramming) {
  for (long k = 0; k <= 16; ++k) {
    for (long a = 0; a <= k; ++a) {
      for (long b = 0; b <= k; ++b) {
        if ((k + a + b) % 2) continue;
        ASSERT_EQ(dyck_count({k, a, b}), dp_paths(k, a, b)) << k << "," << a << "," << b;
        ASSERT_EQ(enumerate_dyck_paths({k, a, b}).size(), dp_paths(k, a, b));
      }
    }
  }
}

TEST(Dyck, InvalidSpecs) {
  EXPECT_THROW(dyck_count({-1, 0, 0}), DomainError);
  EXPECT_THROW(dyck_count({3, 0, 0}), DomainError);
}

TEST(Dyck, EnumerationIsLexicographicAndValid) {
  const auto words = enumerate_dyck_paths({6, 0, 0});
  ASSERT_EQ(words.size(), 5u);
  EXPECT_EQ(words.front(), "UDUDUD");
  for (std::size_t k = 1; k < words.size(); ++k) EXPECT_LT(words[k - 1], words[k]);
}

TEST(Staircase, RoundTrip) {
  const DyckSpec spec{7, 2, 1};
  for (const auto& w : enumerate_dyck_paths(spec)) {
    const auto sp = staircase_iso(w, spec);
    const auto [word, back] = staircase_inverse(sp);
    EXPECT_EQ(word, w);
    EXPECT_EQ(back.k, spec.k);
    EXPECT_EQ(back.delta1, spec.delta1);
    EXPECT_EQ(back.delta2, spec.delta2);
  }
  EXPECT_THROW(staircase_iso("DD", {2, 0, 0}), DomainError);
}

TEST(Ferrers, PatternRoundTrip) {
  const DetectionPattern p{1, 0, 2, 1};
  const auto f = pattern_to_ferrers(p);
  EXPECT_EQ(f.columns(), (std::vector<unsigned>{0, 1, 1, 3, 4}));
  EXPECT_EQ(ferrers_to_pattern(f), p);
  EXPECT_THROW(ExtendedFerrers({1, 2}), DomainError);
  EXPECT_THROW(ExtendedFerrers({0, 2, 1}), DomainError);
}

TEST(Young, VertexCounts) {
  EXPECT_EQ(young_lattice(ExtendedFerrers::from_partition({1, 2, 3})).size(), 14u);
  EXPECT_EQ(young_lattice(ExtendedFerrers::from_partition({})).size(), 1u);
  const auto y = young_lattice(ExtendedFerrers::from_partition({2, 2}));
  EXPECT_EQ(y.size(), 6u);  // partitions inside a 2x2 box
  EXPECT_THROW(young_lattice(ExtendedFerrers::from_partition({30, 30, 30, 30, 30, 30, 30})), RefusalError);
}

TEST(Young, CoverEdgesAddOneBox) {
  const auto y = young_lattice(ExtendedFerrers::from_partition({2, 3, 4}));
  for (const auto& [a, b] : y.cover_edges()) {
    const auto& lo = y.vertices()[a].columns();
    const auto& hi = y.vertices()[b].columns();
    unsigned diff = 0;
    for (std::size_t c = 0; c < lo.size(); ++c) diff += hi[c] - lo[c];
    EXPECT_EQ(diff, 1u);
    EXPECT_TRUE(y.vertices()[a].contained_in(y.vertices()[b]));
  }
}

TEST(Catalan, SizesMatchDyckCounts) {
  for (std::size_t m = 2; m <= 7; ++m) {
    for (unsigned n : {static_cast<unsigned>(m - 1), static_cast<unsigned>(m)}) {
      for (std::size_t d = 1; d < m; ++d) {
        EXPECT_EQ(catalan_basis(m, n, d).size(), dyck_count(catalan_dyck_spec(m, n, d)));
        EXPECT_EQ(catalan_lattice(m, n, d).size(), catalan_basis(m, n, d).size());
      }
    }
  }
  EXPECT_EQ(catalan_basis(4, 4, 1).size(), 28u);
  EXPECT_EQ(catalan_basis(4, 3, 2).size(), 19u);
  EXPECT_EQ(catalan_basis(4, 3, 3).size(), 20u);
  EXPECT_THROW(catalan_basis(4, 2, 1), DomainError);
  EXPECT_THROW(catalan_basis(4, 4, 4), DomainError);
}

TEST(Catalan, DepthOneOfThreeModesIsYoungOfOneTwoThree) {
  const auto top = catalan_top(4, 3, 1);
  EXPECT_EQ(top.columns(), (std::vector<unsigned>{0, 1, 2, 3, 3}));
}

TEST(Catalan, CascadeOrderRoundTrip) {
  for (const auto& p : catalan_basis(5, 5, 2)) {
    EXPECT_EQ(cascade_ferrers_to_pattern(pattern_to_cascade_ferrers(p)), p);
  }
}

TEST(BoxBitStrings, DistinctParities) {
  for (std::size_t m = 2; m <= 10; ++m) EXPECT_TRUE(parity_distinctness_check(m));
  const auto top = box_top(4);
  EXPECT_EQ(top.columns(), (std::vector<unsigned>{0, 1, 2, 3, 3}));
  const auto f = box_bitstring_apply(top, BoxBitString::from_code(0b101, 4));
  EXPECT_EQ(f.columns(), (std::vector<unsigned>{0, 0, 2, 2, 3}));
}

TEST(Boolean, ReferenceCountsUnderIntervalDefinition) {
  EXPECT_EQ(count_boolean_sublattices(young_lattice(ExtendedFerrers::from_partition({2, 3, 4})), 3), 4u);
  const auto c = catalan_lattice(4, 3, 1);
  EXPECT_EQ(count_boolean_sublattices(c, 3), 1u);
  EXPECT_EQ(count_boolean_sublattices(c, 2), 9u);
  EXPECT_THROW(count_boolean_sublattices(c, 0), DomainError);
}

TEST(Boolean, GeneralSublatticeCountsAreLarger) {
  const auto c = catalan_lattice(4, 3, 1);
  EXPECT_EQ(count_boolean_sublattices(c, 2, BooleanCounting::Sublattice), 21u);
  EXPECT_EQ(count_boolean_sublattices(young_lattice(ExtendedFerrers::from_partition({2, 3, 4})), 3,
                                      BooleanCounting::Sublattice),
            7u);
  // B1 intervals are cover edges; B1 sublattices are all comparable pairs.
  EXPECT_EQ(count_boolean_sublattices(c, 1), c.cover_edges().size());
  std::uint64_t comparable = 0;
  for (const auto& x : c.vertices()) {
    for (const auto& y : c.vertices()) comparable += x != y && x.contained_in(y);
  }
  EXPECT_EQ(count_boolean_sublattices(c, 1, BooleanCounting::Sublattice), comparable);
}

TEST(Boolean, OrdinalSums) {
  EXPECT_EQ(ordinal_sum_decomposition(catalan_lattice(3, 3, 1)).to_string(), "B2 (+) B2 (+) B1");
  EXPECT_EQ(ordinal_sum_decomposition(catalan_lattice(2, 2, 1)).to_string(), "B1 (+) B1");
}

TEST(Export, TextFormat) {
  const auto y = catalan_lattice(2, 2, 1);
  const auto text = export_lattice_text(y);
  EXPECT_NE(text.find("v0 diagram="), std::string::npos);
  EXPECT_NE(text.find(" pattern="), std::string::npos);
  EXPECT_NE(text.find(" bits="), std::string::npos);
  EXPECT_NE(text.find("\ne "), std::string::npos);
}
