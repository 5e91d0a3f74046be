#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "cookiescope/stats/descriptive.h"
#include "cookiescope/stats/holm.h"
#include "cookiescope/stats/mann_whitney.h"
#include "cookiescope/stats/reports.h"
#include "cookiescope/stats/significance.h"
#include "testkit/testkit.h"

namespace {

using namespace cookiescope::stats;

std::vector<double> random_sample(testkit::Rng& rng, std::size_t n, int max_value) {
  std::uniform_int_distribution<int> v(0, max_value);
  std::vector<double> out(n);
  for (double& x : out) x = v(rng);
  return out;
}

// Normal approximation written from the textbook formula over raw values.
double normal_oracle_p(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : x == y ? 0.5 : 0.0;
  }
  std::map<double, double> ties;
  for (double x : a) ++ties[x];
  for (double x : b) ++ties[x];
  const double m = a.size(), n = b.size(), total = m + n;
  double tie_sum = 0;
  for (const auto& [_, t] : ties) tie_sum += t * t * t - t;
  const double var = m * n / 12.0 * ((total + 1) - tie_sum / (total * (total - 1)));
  if (var <= 0) return 1.0;
  const double dev = std::abs(u - m * n / 2) - 0.5;
  if (dev <= 0) return 1.0;
  return std::min(1.0, std::erfc(dev / std::sqrt(var) / std::sqrt(2.0)));
}

TEST(MannWhitney, SeparatedSamplesExact) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = mann_whitney_u(a, b);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.u_a, 0);
  EXPECT_DOUBLE_EQ(r.u_b, 9);
  EXPECT_NEAR(r.p_two_sided, 0.1, 1e-12);
}

TEST(MannWhitney, AllTiedGivesOne) {
  const std::vector<double> a{2, 2, 2}, b{2, 2};
  EXPECT_DOUBLE_EQ(mann_whitney_u(a, b, MwuMethod::kNormal).p_two_sided, 1.0);
  EXPECT_DOUBLE_EQ(mann_whitney_u(a, b, MwuMethod::kExact).p_two_sided, 1.0);
}

TEST(MannWhitney, Errors) {
  const std::vector<double> empty, one{1};
  EXPECT_THROW(mann_whitney_u(empty, one), StatsError);
  const std::vector<double> big(11, 1.0);
  EXPECT_THROW(mann_whitney_u(big, big, MwuMethod::kExact), StatsError);
  EXPECT_FALSE(mann_whitney_u(big, big).exact);
}

TEST(MannWhitneyProperty, ExactMatchesPairwiseWinOracle) {
  testkit::Rng rng(61);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int round = 0; round < 500; ++round) {
    const auto a = random_sample(rng, size(rng), 5);
    const auto b = random_sample(rng, size(rng), 5);
    const auto r = mann_whitney_u(a, b, MwuMethod::kExact);
    ASSERT_NEAR(r.p_two_sided, testkit::mwu_oracle_p(a, b), 1e-9);
    ASSERT_DOUBLE_EQ(r.u_a + r.u_b, double(a.size() * b.size()));
  }
}

TEST(MannWhitneyProperty, NormalMatchesFormulaOracle) {
  testkit::Rng rng(62);
  std::uniform_int_distribution<std::size_t> size(1, 30);
  for (int round = 0; round < 1000; ++round) {
    const auto a = random_sample(rng, size(rng), 8);
    const auto b = random_sample(rng, size(rng), 8);
    ASSERT_NEAR(mann_whitney_u(a, b, MwuMethod::kNormal).p_two_sided, normal_oracle_p(a, b), 1e-9);
  }
}

TEST(MannWhitneyProperty, SwappingSamplesKeepsP) {
  testkit::Rng rng(63);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  for (int round = 0; round < 500; ++round) {
    const auto a = random_sample(rng, size(rng), 5);
    const auto b = random_sample(rng, size(rng), 5);
    const auto ab = mann_whitney_u(a, b), ba = mann_whitney_u(b, a);
    ASSERT_NEAR(ab.p_two_sided, ba.p_two_sided, 1e-12);
    ASSERT_DOUBLE_EQ(ab.u_a, ba.u_b);
  }
}

std::vector<double> holm_oracle(const std::vector<double>& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return p[i] < p[j]; });
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    double v = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      v = std::max(v, std::min(1.0, double(p.size() - j) * p[order[j]]));
    }
    out[order[k]] = v;
  }
  return out;
}

TEST(Holm, KnownValues) {
  const auto adj = holm_adjust({0.01, 0.04, 0.03, 0.005});
  const std::vector<double> want{0.03, 0.06, 0.06, 0.02};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(adj[i], want[i], 1e-12);
  EXPECT_TRUE(holm_adjust({}).empty());
  EXPECT_THROW(holm_adjust({0.5, 1.5}), StatsError);
  EXPECT_THROW(holm_adjust({-0.1}), StatsError);
}

TEST(HolmProperty, MatchesOracleAndBounds) {
  testkit::Rng rng(64);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int round = 0; round < 1000; ++round) {
    std::vector<double> p(size(rng));
    for (double& x : p) x = round % 3 == 0 ? std::round(unit(rng) * 10) / 100 : unit(rng) * unit(rng);
    const auto adj = holm_adjust(p);
    const auto want = holm_oracle(p);
    ASSERT_EQ(adj.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_NEAR(adj[i], want[i], 1e-12);
      ASSERT_GE(adj[i], p[i]);
      ASSERT_LE(adj[i], 1.0);
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[i] < p[j]) ASSERT_LE(adj[i], adj[j]);
      }
    }
  }
}

TEST(Descriptive, CoefficientOfVariation) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_NEAR(coefficient_of_variation(v), 2.0 / 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(coefficient_of_variation(std::vector<double>{0, 0, 0}), 0.0);
  EXPECT_THROW(coefficient_of_variation(std::vector<double>{}), StatsError);
  EXPECT_THROW(coefficient_of_variation(std::vector<double>{-1, 1}), StatsError);
  EXPECT_THROW(mean(std::vector<double>{}), StatsError);
}

TEST(DescriptiveProperty, CovIsScaleInvariant) {
  testkit::Rng rng(65);
  std::uniform_real_distribution<double> value(0.1, 100), scale(0.001, 1000);
  std::uniform_int_distribution<std::size_t> size(1, 30);
  for (int round = 0; round < 1000; ++round) {
    std::vector<double> v(size(rng));
    for (double& x : v) x = value(rng);
    const double k = scale(rng);
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= k;
    ASSERT_NEAR(coefficient_of_variation(scaled), coefficient_of_variation(v), 1e-9);
  }
}

TEST(Descriptive, Ecdf) {
  const std::vector<double> v{3, 1, 2, 2};
  const auto e = ecdf(v);
  const std::vector<EcdfPoint> want{{1, 0.25}, {2, 0.75}, {3, 1.0}};
  EXPECT_EQ(e, want);
  EXPECT_THROW(ecdf(std::vector<double>{}), StatsError);
}

TEST(Reports, DeltaReport) {
  const auto r = delta_report({{"a", {4, 6}}, {"b", {1}}, {"c", {}}}, {{"a", {1}}, {"c", {2}}, {"d", {1}}},
                              "inner", "landing");
  EXPECT_EQ(r.sign_convention, "inner-minus-landing");
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].site, "a");
  EXPECT_DOUBLE_EQ(r.rows[0].delta, 4.0);
  EXPECT_EQ(r.excluded, (std::vector<std::string>{"b", "c", "d"}));
}

TEST(Reports, CmpCumulativeShare) {
  const auto pts = cmp_cumulative_share({{3, "OneTrust"}, {1, "OneTrust"}, {2, "Others"}, {3, "Others"}});
  ASSERT_FALSE(pts.empty());
  EXPECT_EQ(pts.back().rank, 3);
  std::map<std::string, std::size_t> last;
  for (const auto& p : pts) {
    ASSERT_GE(p.cumulative, last[p.bucket]);
    last[p.bucket] = p.cumulative;
    ASSERT_NEAR(p.share, p.cumulative / 4.0, 1e-12);
  }
  EXPECT_EQ(last["OneTrust"], 2u);
  EXPECT_EQ(last["Others"], 2u);
}

TEST(Significance, FamiliesAndSummaries) {
  std::vector<SampleSeries> s;
  for (const char* site : {"s1", "s2", "s3"}) {
    s.push_back({site, "us", "accept", {1, 2, 3, 4, 5}});
    s.push_back({site, "de", "accept", {11, 12, 13, 14, 15}});
    s.push_back({site, "uk", "accept", {1, 2, 3, 4, 5}});
  }
  const auto m = significance_matrix(s);
  EXPECT_EQ(m.tests.size(), 9u);
  ASSERT_EQ(m.pairs.size(), 3u);
  for (const auto& pair : m.pairs) {
    EXPECT_EQ(pair.tests, 3u);
    const bool same = (pair.label_a == "uk" && pair.label_b == "us") || (pair.label_a == "us" && pair.label_b == "uk");
    EXPECT_EQ(pair.significant, same ? 0u : 3u) << pair.label_a << "/" << pair.label_b;
  }
  for (const auto& t : m.tests) EXPECT_GE(t.p_adjusted, t.p_raw);
}

TEST(Significance, Errors) {
  EXPECT_THROW(significance_matrix({{"s", "us", "accept", {1}}}), StatsError);
  EXPECT_THROW(significance_matrix({{"s", "us", "accept", {1}}, {"s", "us", "accept", {2}}}), StatsError);
  EXPECT_THROW(significance_matrix({{"s", "us", "accept", {}}, {"s", "de", "accept", {2}}}), StatsError);
  try {
    significance_matrix({{"s1", "us", "accept", {1}}, {"s1", "de", "accept", {2}}, {"s2", "us", "accept", {1}}});
    FAIL() << "uneven coverage accepted";
  } catch (const StatsError& e) {
    EXPECT_NE(std::string(e.what()).find("s2"), std::string::npos);
  }
}

}  // namespace
