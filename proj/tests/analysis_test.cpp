#include <gtest/gtest.h>

#include <cmath>

#include "sqkd/analysis.hpp"
#include "sqkd/errors.hpp"

namespace sqkd {
namespace {

RateConfig config(int d, int n, Scenario s, LambdaEntropy reading = LambdaEntropy::kPair) {
  RateConfig c;
  c.dim = d;
  c.n_mubs = n;
  c.scenario = s;
  c.options.lambda_entropy = reading;
  return c;
}

TEST(MakeGrid, RowCountAndEndpoints) {
  const auto g = make_grid(0.0, 0.06, 0.001);
  ASSERT_EQ(g.size(), 61u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 0.06, 1e-15);
  EXPECT_EQ(make_grid(0.0, 0.0, 0.01).size(), 1u);
  EXPECT_THROW(make_grid(0.0, 0.1, 0.0), DomainError);
  EXPECT_THROW(make_grid(0.1, 0.0, 0.01), DomainError);
}

TEST(Sweep, RowsMatchKeyRate) {
  const RateConfig c = config(3, 4, Scenario::kIndependent);
  const auto grid = make_grid(0.0, 0.06, 0.001);
  const auto rows = sweep(c, grid);
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_NEAR(rows.front().r, std::log2(3.0), 1e-9);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const KeyRateBreakdown b = key_rate(c.model(grid[k]), c.n_mubs, c.options);
    EXPECT_EQ(rows[k].r, b.r);
    EXPECT_EQ(rows[k].lambda1, b.lambda1);
    EXPECT_EQ(rows[k].t.t4, b.t.t4);
    EXPECT_EQ(rows[k].q, grid[k]);
  }
}

TEST(Sweep, IndependentOfThreadCount) {
  const RateConfig c = config(4, 3, Scenario::kDependent);
  const auto grid = make_grid(0.0, 0.25, 0.001);
  const auto one = sweep(c, grid, 1);
  const auto many = sweep(c, grid, 7);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    EXPECT_EQ(one[k].r, many[k].r);
    EXPECT_EQ(one[k].warnings, many[k].warnings);
  }
}

TEST(Sweep, RejectsBadGrid) {
  const RateConfig c = config(3, 3, Scenario::kDependent);
  const std::vector<double> descending{0.02, 0.01};
  const std::vector<double> outside{0.0, 0.4};
  EXPECT_THROW(sweep(c, descending), DomainError);
  EXPECT_THROW(sweep(c, outside), DomainError);
}

TEST(FindThreshold, DefaultReadingStaysPositive) {
  // With the pair entropy the rate never reaches zero on [0, 1/d].
  for (auto [d, n] : supported_configurations()) {
    const ThresholdResult t = find_threshold(config(d, n, Scenario::kDependent));
    EXPECT_TRUE(t.open);
    EXPECT_DOUBLE_EQ(t.q_star, 1.0 / d);
  }
}

TEST(FindThreshold, BracketsTheCrossing) {
  for (auto [d, n] : supported_configurations()) {
    for (auto s : {Scenario::kDependent, Scenario::kIndependent}) {
      const RateConfig c = config(d, n, s, LambdaEntropy::kBinarySum);
      const ThresholdResult t = find_threshold(c);
      if (t.open) continue;
      EXPECT_LE(t.bracket_width, 1e-7);
      EXPECT_GT(key_rate(c.model(t.q_star), n, c.options).r, 0.0);
      EXPECT_LE(key_rate(c.model(t.q_star + t.bracket_width), n, c.options).r, 0.0);
    }
  }
}

TEST(FindThreshold, OrderingUnderBinarySumReading) {
  for (int d : {3, 4}) {
    for (auto s : {Scenario::kDependent, Scenario::kIndependent}) {
      double previous = 0.0;
      for (auto [dim, n] : supported_configurations()) {
        if (dim != d) continue;
        const ThresholdResult t = find_threshold(config(d, n, s, LambdaEntropy::kBinarySum));
        if (t.open) continue;
        EXPECT_GT(t.q_star, previous) << d << " " << n;
        previous = t.q_star;
      }
    }
    for (auto [dim, n] : supported_configurations()) {
      if (dim != d) continue;
      const double dep = find_threshold(config(d, n, Scenario::kDependent, LambdaEntropy::kBinarySum)).q_star;
      const double ind = find_threshold(config(d, n, Scenario::kIndependent, LambdaEntropy::kBinarySum)).q_star;
      EXPECT_GT(dep, ind);
    }
  }
}

TEST(FindThreshold, Deterministic) {
  const RateConfig c = config(4, 5, Scenario::kDependent, LambdaEntropy::kBinarySum);
  EXPECT_EQ(find_threshold(c).q_star, find_threshold(c).q_star);
}

TEST(ReferenceThresholds, PrintedConstants) {
  EXPECT_EQ(reference_thresholds().size(), 16u);
  int reference_only = 0;
  bool saw_comp_b = false, saw_d3_two = false;
  for (const auto& r : reference_thresholds()) {
    if (r.reference_only) ++reference_only;
    if (r.dim == 4 && r.variant == "comp+B" && r.scenario == Scenario::kDependent) {
      EXPECT_DOUBLE_EQ(r.value, 0.1205);
      saw_comp_b = true;
    }
    if (r.dim == 3 && r.n_mubs == 2 && r.scenario == Scenario::kDependent) {
      EXPECT_DOUBLE_EQ(r.value, 0.04247);
      saw_d3_two = true;
    }
  }
  EXPECT_EQ(reference_only, 4);
  EXPECT_TRUE(saw_comp_b);
  EXPECT_TRUE(saw_d3_two);
  EXPECT_DOUBLE_EQ(*reference_threshold(3, 4, Scenario::kIndependent), 0.0443);
  EXPECT_DOUBLE_EQ(*reference_threshold(4, 2, Scenario::kIndependent), 0.0162);
  EXPECT_DOUBLE_EQ(*reference_threshold(3, 2, Scenario::kDependent), 0.04247);
  EXPECT_FALSE(reference_threshold(3, 5, Scenario::kDependent).has_value());
}

}  // namespace
}  // namespace sqkd
