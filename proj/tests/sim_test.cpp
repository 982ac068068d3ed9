#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqkd/errors.hpp"
#include "sqkd/sim.hpp"

namespace sqkd {
namespace {

// 0.9973 quantile of chi-square with 2 degrees of freedom (three sigma).
constexpr double kChi2Df2ThreeSigma = 11.829;

TEST(RoundRng, KeyedStreamsAreReproducible) {
  RoundRng a(42, 7), b(42, 7), c(42, 8), e(43, 7);
  const std::uint64_t first = a.next();
  EXPECT_EQ(first, b.next());
  EXPECT_NE(first, c.next());
  EXPECT_NE(first, e.next());
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int v = a.below(5);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 5);
  }
}

TEST(MeasureInBasis, UniformOutcomesForUnbiasedState) {
  const MubFamily f = qutrit_mubs();
  const ComplexVector x0 = f.at(BasisLabel::kX).vector(0);
  const int trials = 100000;
  std::vector<int> counts(3, 0);
  for (int k = 0; k < trials; ++k) {
    RoundRng rng(5, static_cast<std::uint64_t>(k));
    ++counts[static_cast<std::size_t>(measure_in_basis(x0, f.bases.front(), rng).outcome)];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += std::pow(c - trials / 3.0, 2) / (trials / 3.0);
  EXPECT_LT(chi2, kChi2Df2ThreeSigma);
}

TEST(MeasureInBasis, EigenstateIsDeterministic) {
  const Basis comp = qutrit_mubs().bases.front();
  RoundRng rng(1);
  for (int k = 0; k < 100; ++k) {
    const Measurement m = measure_in_basis(comp.vector(2), comp, rng);
    EXPECT_EQ(m.outcome, 2);
    EXPECT_EQ(m.post_state, comp.vector(2));
  }
}

TEST(MeasureInBasis, RejectsUnnormalizedState) {
  RoundRng rng(1);
  const ComplexVector v{1.0, 1.0, 0.0};
  EXPECT_THROW(measure_in_basis(v, qutrit_mubs().bases.front(), rng), DomainError);
}

TEST(BornProbabilities, SumToOne) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g;
  for (const MubFamily& f : {qutrit_mubs(), ququart_mubs()}) {
    for (int trial = 0; trial < 20; ++trial) {
      ComplexVector v(static_cast<std::size_t>(f.dim));
      for (auto& x : v) x = Complex(g(gen), g(gen));
      const double n = std::sqrt(norm_squared(v));
      for (auto& x : v) x /= n;
      for (const Basis& b : f.bases) {
        double s = 0.0;
        for (double p : born_probabilities(v, b)) s += p;
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
}

TEST(ApplyChannel, NoiselessIsIdentity) {
  const ComplexVector x0 = qutrit_mubs().at(BasisLabel::kY).vector(1);
  RoundRng rng(9);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(apply_channel(x0, 0.0, rng), x0);
}

TEST(ApplyChannel, FlipRateMatchesTransition) {
  const Basis comp = qutrit_mubs().bases.front();
  const int trials = 1000000;
  const double q = 0.05;
  int flips_to_one = 0;
  for (int k = 0; k < trials; ++k) {
    RoundRng rng(11, static_cast<std::uint64_t>(k));
    const ComplexVector out = apply_channel(comp.vector(0), q, rng);
    if (measure_in_basis(out, comp, rng).outcome == 1) ++flips_to_one;
  }
  const double sigma = std::sqrt(q * (1 - q) / trials);
  EXPECT_NEAR(static_cast<double>(flips_to_one) / trials, q, 3 * sigma);
}

TEST(ApplyChannel, TwoPassMubErrorMatchesAccumulatedNoise) {
  const Basis z = qutrit_mubs().at(BasisLabel::kZ);
  const int trials = 200000;
  const double expected = 2 * 0.05 * (2 - 3 * 0.05);  // 0.185
  int errors = 0;
  for (int k = 0; k < trials; ++k) {
    RoundRng rng(13, static_cast<std::uint64_t>(k));
    ComplexVector s = apply_channel(z.vector(1), 0.05, rng);
    s = apply_channel(s, 0.05, rng);
    if (measure_in_basis(s, z, rng).outcome != 1) ++errors;
  }
  const double sigma = std::sqrt(expected * (1 - expected) / trials);
  EXPECT_NEAR(static_cast<double>(errors) / trials, expected, 3 * sigma);
}

TEST(RunProtocol, NoiselessRun) {
  ProtocolConfig c;
  c.q = 0.0;
  c.rounds = 100000;
  const ProtocolResult res = run_protocol(c);
  const StatsTensor f = res.stats.frequencies();
  for (int a = 0; a < 3; ++a) EXPECT_EQ(f.p(a, a, a), 1.0);
  EXPECT_NEAR(res.key_rate.r, std::log2(3.0), 1e-12);
  EXPECT_EQ(res.stats.resend_rounds + res.stats.reflect_rounds, c.rounds);
}

TEST(RunProtocol, DiagonalFrequencyNearAnalytic) {
  ProtocolConfig c;
  c.q = 0.05;
  c.rounds = 1000000;
  c.seed = 2024;
  c.threads = 4;
  const EmpiricalStats s = simulate_counts(c);
  const double n0 = static_cast<double>(s.slice_total(0));
  const double sigma = std::sqrt(0.81 * 0.19 / n0);
  EXPECT_NEAR(s.n(0, 0, 0) / n0, 0.81, 3 * sigma);
}

TEST(RunProtocol, FrequencySlicesSumToOne) {
  ProtocolConfig c;
  c.dim = 4;
  c.n_mubs = 5;
  c.q = 0.03;
  c.rounds = 20000;
  const StatsTensor f = simulate_counts(c).frequencies();
  EXPECT_NO_THROW(f.validate());
}

TEST(RunProtocol, BitIdenticalAcrossRunsAndThreads) {
  ProtocolConfig c;
  c.dim = 4;
  c.n_mubs = 3;
  c.q = 0.04;
  c.scenario = Scenario::kIndependent;
  c.rounds = 50000;
  c.seed = 99;
  const EmpiricalStats a = simulate_counts(c);
  const EmpiricalStats b = simulate_counts(c);
  c.threads = 3;
  const EmpiricalStats threaded = simulate_counts(c);
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(a == threaded);
  c.seed = 100;
  EXPECT_FALSE(a == simulate_counts(c));
}

TEST(RunProtocol, InsufficientData) {
  ProtocolConfig c;
  c.rounds = 2;
  EXPECT_THROW(run_protocol(c), InsufficientDataError);
}

TEST(RunProtocol, ValidatesConfig) {
  ProtocolConfig c;
  c.rounds = 0;
  EXPECT_THROW(simulate_counts(c), DomainError);
  c.rounds = 10;
  c.q = 0.5;
  EXPECT_THROW(simulate_counts(c), DomainError);
  c.q = 0.01;
  c.prob_reflect = 1.5;
  EXPECT_THROW(simulate_counts(c), DomainError);
}

TEST(PhysicalConvention, MatchesPassCount) {
  EXPECT_EQ(physical_convention(Scenario::kDependent), MubConvention::kPerOutcome);
  EXPECT_EQ(physical_convention(Scenario::kIndependent), MubConvention::kTotalSplit);
}

}  // namespace
}  // namespace sqkd
