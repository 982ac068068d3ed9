#include <gtest/gtest.h>

#include <cmath>

#include "sqkd/channel.hpp"
#include "sqkd/errors.hpp"
#include "sqkd/numerics.hpp"

namespace sqkd {
namespace {

NoiseModel model(int d, double q, Scenario s = Scenario::kDependent,
                 MubConvention c = MubConvention::kPerOutcome) {
  return NoiseModel{d, q, s, c};
}

TEST(TransitionMatrix, Entries) {
  const RealMatrix id = transition_matrix(3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(id[i][j], i == j ? 1.0 : 0.0);

  const RealMatrix t3 = transition_matrix(3, 0.05);
  EXPECT_NEAR(t3[1][1], 0.90, 1e-15);
  EXPECT_NEAR(t3[1][2], 0.05, 1e-15);

  const RealMatrix t4 = transition_matrix(4, 0.10);
  EXPECT_NEAR(t4[3][3], 0.70, 1e-15);
  EXPECT_NEAR(t4[0][3], 0.10, 1e-15);
}

TEST(TransitionMatrix, RejectsOutOfRange) {
  EXPECT_THROW(transition_matrix(3, -0.01), DomainError);
  EXPECT_THROW(transition_matrix(3, 0.34), DomainError);
  EXPECT_THROW(transition_matrix(5, 0.01), DomainError);
  EXPECT_NO_THROW(transition_matrix(4, 0.25));
}

TEST(JointStats, Values) {
  const StatsTensor zero = joint_stats(model(3, 0.0));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) EXPECT_EQ(zero.p(a, b, c), (a == b && b == c) ? 1.0 : 0.0);

  const StatsTensor s = joint_stats(model(3, 0.05));
  EXPECT_NEAR(s.p(0, 0, 0), 0.81, 1e-15);
  EXPECT_NEAR(s.p(0, 1, 1), 0.045, 1e-15);
  EXPECT_NEAR(s.p(0, 1, 2), 0.0025, 1e-15);
  EXPECT_NO_THROW(s.validate());
}

TEST(JointStats, SameInBothScenarios) {
  const StatsTensor dep = joint_stats(model(4, 0.07, Scenario::kDependent));
  const StatsTensor ind = joint_stats(model(4, 0.07, Scenario::kIndependent));
  EXPECT_EQ(dep.flat(), ind.flat());
}

TEST(JointStats, DiagonalStrictlyDecreasing) {
  for (int d : {3, 4}) {
    double previous = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double q = k * (1.0 / d) / 100.0;
      const double v = joint_stats(model(d, q)).p(1, 1, 1);
      EXPECT_LT(v, previous);
      previous = v;
    }
  }
}

TEST(ReflectedError, PrintedValues) {
  EXPECT_NEAR(reflected_mub_error(model(3, 0.05, Scenario::kIndependent)).total, 0.185, 1e-15);
  EXPECT_NEAR(reflected_mub_error(model(3, 0.05, Scenario::kDependent)).total, 0.05, 1e-15);
  EXPECT_NEAR(reflected_mub_error(model(4, 0.05, Scenario::kIndependent)).total, 0.27, 1e-15);
}

TEST(ReflectedError, IndependentIdentitiesOnGrid) {
  for (int k = 0; k <= 1000; ++k) {
    const double q3 = k * (1.0 / 3.0) / 1000.0;
    const double e3 = reflected_mub_error(model(3, q3, Scenario::kIndependent)).total;
    EXPECT_NEAR(e3, 2 * q3 * (2 - 3 * q3), 1e-14);
    EXPECT_NEAR(e3, 1 - (std::pow(1 - 2 * q3, 2) + 2 * q3 * q3), 1e-14);

    const double q4 = k * 0.25 / 1000.0;
    const double e4 = reflected_mub_error(model(4, q4, Scenario::kIndependent)).total;
    EXPECT_NEAR(e4, 2 * q4 * (3 - 6 * q4), 1e-14);
    EXPECT_NEAR(e4, 1 - (std::pow(1 - 3 * q4, 2) + 3 * q4 * q4), 1e-14);
  }
}

TEST(ReflectedError, Conventions) {
  const auto per = reflected_mub_error(model(3, 0.05, Scenario::kIndependent, MubConvention::kPerOutcome));
  const auto split = reflected_mub_error(model(3, 0.05, Scenario::kIndependent, MubConvention::kTotalSplit));
  EXPECT_NEAR(per.per_pair, 0.185, 1e-15);
  EXPECT_NEAR(split.per_pair, 0.0925, 1e-15);
  EXPECT_TRUE(per.warnings.empty());
}

TEST(ReflectedError, ClampsWithWarning) {
  // E = 2Q(3-6Q) reaches 0.375 > 1/3 at Q = 0.25, d = 4, per-outcome.
  const auto e = reflected_mub_error(model(4, 0.25, Scenario::kIndependent, MubConvention::kPerOutcome));
  EXPECT_NEAR(e.per_pair, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(e.warnings.empty());
}

TEST(AnalyticStats, MubTablesPerActiveBasis) {
  const StatsTensor s = analytic_stats(model(4, 0.02), 3);
  EXPECT_TRUE(s.has_mub_error(BasisLabel::kA));
  EXPECT_TRUE(s.has_mub_error(BasisLabel::kB));
  EXPECT_FALSE(s.has_mub_error(BasisLabel::kC));
  const MubErrorTable& a = s.mub_error(BasisLabel::kA);
  EXPECT_EQ(a.pair_error[0][0], 0.0);
  EXPECT_NEAR(a.pair_error[0][3], 0.02, 1e-15);
  EXPECT_NEAR(a.total(), 12 * 0.02, 1e-14);

  const StatsTensor zero = analytic_stats(model(3, 0.0), 4);
  for (const auto& table : zero.mub_errors()) EXPECT_EQ(table.total(), 0.0);
}

TEST(RawKeyJoint, Values) {
  const RawKeyJoint zero = raw_key_joint(model(3, 0.0));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(zero.joint[i][i], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(zero.conditional_entropy(), 0.0, 1e-15);

  const RawKeyJoint noisy = raw_key_joint(model(3, 0.05));
  EXPECT_NEAR(noisy.conditional_entropy(), shannon_entropy(ProbDist{0.9, 0.05, 0.05}), 1e-12);
  EXPECT_NEAR(noisy.conditional_entropy(), 0.568996, 1e-6);
  for (int i = 0; i < 3; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < 3; ++j) {
      row += noisy.joint[i][j];
      col += noisy.joint[j][i];
    }
    EXPECT_NEAR(row, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(col, noisy.p_a[i], 1e-15);
  }
}

TEST(Parsing, RoundTrip) {
  EXPECT_EQ(parse_scenario("dep"), Scenario::kDependent);
  EXPECT_EQ(parse_scenario("independent"), Scenario::kIndependent);
  EXPECT_EQ(parse_convention(to_string(MubConvention::kTotalSplit)), MubConvention::kTotalSplit);
  EXPECT_THROW(parse_scenario("sideways"), DomainError);
}

}  // namespace
}  // namespace sqkd
