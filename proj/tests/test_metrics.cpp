#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "unicluster/metrics.hpp"

namespace unicluster {
namespace {

HardAssignment ha(std::vector<int> v) { return HardAssignment(std::move(v)); }

// Rand-index ingredients by direct enumeration of all point pairs.
double ari_by_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  double both = 0, in_a = 0, in_b = 0, pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      both += sa && sb;
      in_a += sa;
      in_b += sb;
      pairs += 1;
    }
  const double expected = in_a * in_b / pairs;
  const double max = 0.5 * (in_a + in_b);
  return (both - expected) / (max - expected);
}

TEST(Contingency, Examples) {
  const auto t = contingency(ha({0, 0, 1, 2}), ha({0, 0, 1, 2}));
  EXPECT_TRUE(t.counts.isDiagonal());
  EXPECT_EQ(t.n, 4);

  const auto s = contingency(ha({0, 0, 0}), ha({0, 1, 2}));
  EXPECT_EQ(s.counts.rows(), 1);
  EXPECT_EQ(s.counts, Eigen::MatrixXi::Ones(1, 3));
  EXPECT_THROW(contingency(ha({0}), ha({0, 1})), LengthMismatch);
}

TEST(Contingency, MarginalsMatchRecount) {
  Rng rng(1);
  const auto a = test::random_labels(50, 4, rng), b = test::random_labels(50, 3, rng);
  const auto t = contingency(ha(a), ha(b));
  EXPECT_EQ(t.counts.sum(), 50);
  // Rows follow a's labels in first-appearance order.
  const auto ca = canonicalize(ha(a));
  const auto sizes = ca.cluster_sizes();
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    EXPECT_EQ(static_cast<std::size_t>(t.row_sums[r]), sizes[r]);
    EXPECT_EQ(t.counts.row(static_cast<Eigen::Index>(r)).sum(), t.row_sums[r]);
  }
  for (std::size_t c = 0; c < t.col_sums.size(); ++c) EXPECT_EQ(t.counts.col(static_cast<Eigen::Index>(c)).sum(), t.col_sums[c]);
}

TEST(Contingency, OutlierIsItsOwnLabel) {
  const auto t = contingency(ha({-1, -1, 0}), ha({0, 0, 0}));
  EXPECT_EQ(t.counts.rows(), 2);
}

TEST(Ari, Examples) {
  EXPECT_EQ(ari(ha({0, 0, 1, 1, 2}), ha({0, 0, 1, 1, 2})), 1.0);
  EXPECT_NEAR(ari(ha({0, 0, 1, 1}), ha({0, 1, 0, 1})), -0.5, 1e-12);
  EXPECT_NEAR(ari_by_pairs({0, 0, 1, 1}, {0, 1, 0, 1}), -0.5, 1e-12);
  EXPECT_EQ(ari(ha({0, 0, 1, 1, 2}), ha({2, 2, 0, 0, 1})), 1.0);
}

TEST(Ari, MatchesPairCounting) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto a = test::random_labels(25, 3, rng), b = test::random_labels(25, 4, rng);
    EXPECT_NEAR(ari(ha(a), ha(b)), ari_by_pairs(a, b), 1e-12);
  }
}

TEST(Ari, DegenerateCases) {
  EXPECT_EQ(ari(ha({0, 1, 2, 3}), ha({0, 1, 2, 3})), 1.0);
  EXPECT_EQ(ari(ha({0, 0, 0}), ha({0, 0, 0})), 1.0);
  EXPECT_EQ(ari(ha({0, 0, 0}), ha({0, 1, 2})), 0.0);
  EXPECT_THROW(ari(ha({0}), ha({0})), InvalidArgument);
}

TEST(Ami, Examples) {
  EXPECT_EQ(ami(ha({0, 0, 1, 1, 2}), ha({0, 0, 1, 1, 2})), 1.0);
  EXPECT_EQ(ami(ha({0, 0, 1, 1, 2}), ha({1, 1, 2, 2, 0})), 1.0);
  EXPECT_EQ(ami(ha({0, 0, 0, 0}), ha({0, 0, 1, 1})), 0.0);
  EXPECT_EQ(ami(ha({0, 0, 0, 0}), ha({5, 5, 5, 5})), 1.0);
}

TEST(Ami, KnownValue) {
  // Hand-evaluated with the max-entropy normaliser: n = 6, a = {3,3},
  // b = {2,2,2}, table [[2,1,0],[0,1,2]].
  const auto a = ha({0, 0, 0, 1, 1, 1}), b = ha({0, 0, 1, 1, 2, 2});
  const double n = 6.0;
  const double mi = 2 * (2 / n) * std::log(n * 2 / (3 * 2)) + 2 * (1 / n) * std::log(n * 1 / (3 * 2));
  // E[MI]: every (a_i, b_j) = (3, 2) cell; n_ij ranges 1..2 with
  // P(1) = C(3,1)C(3,1)/C(6,2) = 9/15 and P(2) = C(3,2)C(3,0)/C(6,2) = 3/15.
  const double cell = (1 / n) * std::log(n / 6.0) * (9.0 / 15) + (2 / n) * std::log(2 * n / 6.0) * (3.0 / 15);
  const double emi = 6 * cell;
  const double h = std::max(std::log(2.0), std::log(3.0));
  EXPECT_NEAR(ami(a, b), (mi - emi) / (h - emi), 1e-12);
}

TEST(Ami, RandomLabelingsAverageZero) {
  Rng rng(3);
  double sum_ami = 0.0, sum_ari = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto a = ha(test::random_labels(100, 4, rng)), b = ha(test::random_labels(100, 4, rng));
    sum_ami += ami(a, b);
    sum_ari += ari(a, b);
  }
  EXPECT_NEAR(sum_ami / 200, 0.0, 0.02);
  EXPECT_NEAR(sum_ari / 200, 0.0, 0.02);
}

TEST(Scores, SymmetricAndRelabelInvariant) {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    auto a = test::random_labels(30, 3 + t % 3, rng), b = test::random_labels(30, 2 + t % 4, rng);
    a[0] = kOutlier;
    EXPECT_EQ(ari(ha(a), ha(b)), ari(ha(b), ha(a)));
    EXPECT_EQ(ami(ha(a), ha(b)), ami(ha(b), ha(a)));
    auto relabelled = a;
    for (auto& v : relabelled) v = v == kOutlier ? 7 : (v + 2) % 6;
    EXPECT_EQ(ari(ha(relabelled), ha(b)), ari(ha(a), ha(b)));
    EXPECT_EQ(ami(ha(relabelled), ha(b)), ami(ha(a), ha(b)));
    EXPECT_LE(ari(ha(a), ha(b)), 1.0);
    EXPECT_LT(ari(ha(a), ha(b)), 1.0);
  }
}

}  // namespace
}  // namespace unicluster
