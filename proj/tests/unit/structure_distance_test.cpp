#include "hypers2v/structure_distance.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "hypers2v/dtw.hpp"
#include "test_support.hpp"

namespace hypers2v {
namespace {

using testing::brute_force_dtw;

TEST(HyperDegree, SortedDescending) {
  auto g = Hypergraph::from_labels({{"v", "a"}, {"v", "b", "c", "d"}, {"v", "e", "f"}});
  EXPECT_EQ(hyper_degree(g, 0), (HyperDegree{4, 3, 2}));
}

TEST(Collapse, WorkedExample) {
  const HyperDegree hd{4, 4, 3, 2, 2, 2};
  const CollapsedHyperDegree expected{{4, 2}, {3, 1}, {2, 3}};
  EXPECT_EQ(collapse(hd), expected);
  EXPECT_EQ(expand(expected), hd);
}

TEST(Collapse, RejectsUnsortedInput) {
  const HyperDegree hd{2, 3};
  EXPECT_THROW(collapse(hd), std::invalid_argument);
}

TEST(PositionalBias, LargestSizeHasBiasOne) {
  EXPECT_DOUBLE_EQ(positional_bias(4, 4), 1.0);
  EXPECT_DOUBLE_EQ(positional_bias(4, 3), 0.5);
  EXPECT_DOUBLE_EQ(positional_bias(4, 2), 1.0 / 3.0);
}

TEST(Mpd, SizeRatioOnly) {
  EXPECT_NEAR(mpd({6, 1.0}, {3, 1.0}), std::exp(0.5) - 1.0, 1e-15);
  EXPECT_NEAR(mpd({2, 1.0}, {3, 1.0}), std::exp(1.0 / 3.0) - 1.0, 1e-15);
  EXPECT_NEAR(mpd({6, 1.0}, {3, 1.0}), 0.6487212707001282, 1e-12);
  EXPECT_NEAR(mpd({2, 1.0}, {3, 1.0}), 0.3956124250860895, 1e-12);
}

TEST(Mpd, ZeroForIdenticalElements) {
  EXPECT_EQ(mpd({5, 0.25}, {5, 0.25}), 0.0);
}

TEST(Mpd, CombinesBiasDifferenceWithExponent) {
  // sizes 4 vs 2, biases 1 vs 1/3: ((1/2)^3 + (2/3)^3)^(1/3)
  const double inner = std::cbrt(std::pow(0.5, 3) + std::pow(2.0 / 3.0, 3));
  EXPECT_NEAR(mpd({4, 1.0}, {2, 1.0 / 3.0}, 3), std::expm1(inner), 1e-14);
}

TEST(Cmpd, FrequencyDividesBiasAndScalesResult) {
  const double expected = 3.0 * (std::exp(1.0 / 6.0) - 1.0);
  EXPECT_NEAR(cmpd({2, 2, 1.0}, {2, 3, 1.0}), expected, 1e-15);
  EXPECT_NEAR(expected, 0.54408, 5e-6);
}

TEST(D0, CollapsedSeparatesWhatUncollapsedMerges) {
  const CollapsedHyperDegree u{{2, 2}};
  const CollapsedHyperDegree v{{2, 3}};
  const double d = d0(u, v);
  EXPECT_NEAR(d, 3.0 * (std::exp(1.0 / 6.0) - 1.0), 1e-12);
  EXPECT_GT(d, 0.0);
  const HyperDegree hu{2, 2};
  const HyperDegree hv{2, 2, 2};
  EXPECT_EQ(d0_uncollapsed(hu, hv), 0.0);
}

TEST(D0, MatchesBruteForceAlignment) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto random_hd = [&] {
      HyperDegree hd;
      const auto len = 1 + rng.below(6);
      for (std::uint64_t i = 0; i < len; ++i) hd.push_back(2 + static_cast<std::uint32_t>(rng.below(5)));
      std::sort(hd.rbegin(), hd.rend());
      return hd;
    };
    const auto a = collapse(random_hd());
    const auto b = collapse(random_hd());
    auto element = [](const CollapsedHyperDegree& c, std::size_t i) {
      return CmpdElement{c[i].size, c[i].freq,
                         1.0 / static_cast<double>(c.front().size - c[i].size + 1)};
    };
    const double oracle = brute_force_dtw(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
      return cmpd(element(a, i), element(b, j));
    });
    ASSERT_NEAR(d0(a, b), oracle, 1e-12);
  }
}

TEST(D0, SymmetricAndZeroOnIdentity) {
  const CollapsedHyperDegree a{{5, 1}, {3, 2}};
  const CollapsedHyperDegree b{{4, 3}};
  EXPECT_EQ(d0(a, b), d0(b, a));
  EXPECT_EQ(d0(a, a), 0.0);
  EXPECT_GT(d0(a, b), 0.0);
}

TEST(Signature, CanonicalOrderAndCounts) {
  const std::vector<CollapsedHyperDegree> chds{{{2, 2}}, {{3, 1}}, {{2, 2}}, {{3, 1}, {2, 1}}};
  const auto sig = neighborhood_signature(chds);
  ASSERT_EQ(sig.size(), 3u);
  EXPECT_EQ(sig[0].chd, (CollapsedHyperDegree{{3, 1}, {2, 1}}));
  EXPECT_EQ(sig[0].freq, 1u);
  EXPECT_EQ(sig[1].chd, (CollapsedHyperDegree{{3, 1}}));
  EXPECT_EQ(sig[2].chd, (CollapsedHyperDegree{{2, 2}}));
  EXPECT_EQ(sig[2].freq, 2u);
  EXPECT_TRUE(chd_canonical_before(sig[0].chd, sig[1].chd));
  EXPECT_FALSE(chd_canonical_before(sig[1].chd, sig[0].chd));
}

TEST(Signature, IndependentOfNeighborOrder) {
  std::vector<CollapsedHyperDegree> chds{{{4, 1}}, {{2, 3}}, {{3, 2}}, {{2, 3}}};
  const auto first = neighborhood_signature(chds);
  std::reverse(chds.begin(), chds.end());
  EXPECT_EQ(neighborhood_signature(chds), first);
}

TEST(Cncmpd, WorkedValue) {
  const SignatureEntry a{{{2, 2}}, 2};
  const SignatureEntry b{{{2, 3}}, 1};
  EXPECT_NEAR(cncmpd(a, b), 2.0 * 3.0 * (std::exp(1.0 / 6.0) - 1.0), 1e-12);
  EXPECT_NEAR(cncmpd(a, b), 1.08816, 1e-5);
}

TEST(Dk, UndefinedWhenEitherSideIsEmpty) {
  const NeighborhoodSignature some{{{{2, 1}}, 1}};
  EXPECT_FALSE(dk(some, {}).has_value());
  EXPECT_FALSE(dk({}, some).has_value());
  EXPECT_EQ(*dk(some, some), 0.0);
}

TEST(Dk, MatchesBruteForceAlignment) {
  Rng rng(5);
  auto random_sig = [&] {
    std::vector<CollapsedHyperDegree> chds;
    const auto count = 1 + rng.below(6);
    for (std::uint64_t i = 0; i < count; ++i) {
      HyperDegree hd;
      const auto len = 1 + rng.below(3);
      for (std::uint64_t j = 0; j < len; ++j) hd.push_back(2 + static_cast<std::uint32_t>(rng.below(3)));
      std::sort(hd.rbegin(), hd.rend());
      chds.push_back(collapse(hd));
    }
    return neighborhood_signature(chds);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_sig();
    const auto b = random_sig();
    const double oracle = brute_force_dtw(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
      return static_cast<double>(std::max(a[i].freq, b[j].freq)) * d0(a[i].chd, b[j].chd);
    });
    ASSERT_NEAR(*dk(a, b), oracle, 1e-12);
  }
}

TEST(DkUncollapsed, UsesRawNeighborHyperDegrees) {
  const std::vector<HyperDegree> u{{3, 2}, {2}};
  const std::vector<HyperDegree> v{{3, 2}, {2}, {2}};
  EXPECT_EQ(*dk_uncollapsed(u, v), 0.0);  // repeats align for free
  const std::vector<HyperDegree> w{{4}};
  EXPECT_GT(*dk_uncollapsed(u, w), 0.0);
  EXPECT_FALSE(dk_uncollapsed(u, {}).has_value());
}

TEST(Dtw, MatchesExhaustiveEnumeration) {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t m = 1 + rng.below(6);
    std::vector<double> costs(n * m);
    for (double& c : costs) c = rng.uniform() * 3.0;
    auto cost = [&](std::size_t i, std::size_t j) { return costs[i * m + j]; };
    ASSERT_NEAR(dtw_indexed(n, m, cost), testing::brute_force_dtw(n, m, cost), 1e-12);
  }
}

TEST(Dtw, RejectsEmptySequences) {
  EXPECT_THROW(dtw_indexed(0, 3, [](std::size_t, std::size_t) { return 1.0; }),
               std::invalid_argument);
}

}  // namespace
}  // namespace hypers2v
