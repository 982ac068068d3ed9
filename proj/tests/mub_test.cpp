#include <gtest/gtest.h>

#include <cmath>

#include "sqkd/errors.hpp"
#include "sqkd/mub.hpp"

namespace sqkd {
namespace {

constexpr double kTol = 1e-12;

// Independent brute force: every cross modulus equals 1/sqrt(d).
double brute_force_deviation(const Basis& a, const Basis& b) {
  const double target = 1.0 / std::sqrt(static_cast<double>(a.dim));
  double worst = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    for (int j = 0; j < b.dim; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < a.dim; ++k) s += std::conj(a.vectors(k, i)) * b.vectors(k, j);
      worst = std::max(worst, std::abs(std::abs(s) - target));
    }
  }
  return worst;
}

TEST(QutritMubs, PrintedVectors) {
  const MubFamily f = qutrit_mubs();
  ASSERT_EQ(f.bases.size(), 4u);
  const ComplexVector x0 = f.at(BasisLabel::kX).vector(0);
  for (const Complex& c : x0) EXPECT_NEAR(std::abs(c - 1.0 / std::sqrt(3.0)), 0.0, kTol);

  const Basis& x = f.at(BasisLabel::kX);
  EXPECT_NEAR(std::abs(inner(x.vector(1), x.vector(2))), 0.0, kTol);

  const Complex eta = std::polar(1.0, 2.0 * M_PI / 3.0);
  const Complex yz = inner(f.at(BasisLabel::kY).vector(0), f.at(BasisLabel::kZ).vector(0));
  EXPECT_NEAR(std::abs(yz), 1.0 / std::sqrt(3.0), kTol);
  // (eta + 2)/3 up to a global phase
  EXPECT_NEAR(std::abs(yz), std::abs((eta + 2.0) / 3.0), kTol);
}

TEST(QuquartMubs, PrintedVectors) {
  const MubFamily f = ququart_mubs();
  ASSERT_EQ(f.bases.size(), 5u);
  const ComplexVector a0 = f.at(BasisLabel::kA).vector(0);
  for (const Complex& c : a0) EXPECT_NEAR(std::abs(c - 0.5), 0.0, kTol);
  const ComplexVector b0 = f.at(BasisLabel::kB).vector(0);
  const ComplexVector expected{0.5, -0.5, Complex(0, -0.5), Complex(0, -0.5)};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(b0[k] - expected[k]), 0.0, kTol);
}

TEST(Mubs, OrthonormalAndPairwiseUnbiased) {
  for (const MubFamily& f : {qutrit_mubs(), ququart_mubs()}) {
    EXPECT_LE(static_cast<int>(f.bases.size()), f.dim + 1);
    for (std::size_t i = 0; i < f.bases.size(); ++i) {
      EXPECT_LE(orthonormality_deviation(f.bases[i]), kTol);
      for (std::size_t j = i + 1; j < f.bases.size(); ++j) {
        EXPECT_LE(verify_unbiased(f.bases[i], f.bases[j]), kTol);
        EXPECT_LE(brute_force_deviation(f.bases[i], f.bases[j]), kTol);
      }
    }
  }
}

TEST(VerifyUnbiased, SpecExamples) {
  const MubFamily q3 = qutrit_mubs();
  const MubFamily q4 = ququart_mubs();
  EXPECT_LE(verify_unbiased(q3.at(BasisLabel::kComp), q3.at(BasisLabel::kX)), kTol);
  EXPECT_NEAR(verify_unbiased(q4.at(BasisLabel::kComp), q4.at(BasisLabel::kComp)), 0.5, kTol);
  EXPECT_LE(verify_unbiased(q4.at(BasisLabel::kA), q4.at(BasisLabel::kD)), kTol);
  EXPECT_THROW(verify_unbiased(q3.at(BasisLabel::kX), q4.at(BasisLabel::kA)), DomainError);
}

TEST(Mubs, Deterministic) {
  EXPECT_TRUE(qutrit_mubs().bases[2].vectors == qutrit_mubs().bases[2].vectors);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_TRUE(ququart_mubs().bases[k].vectors == ququart_mubs().bases[k].vectors);
}

TEST(Mubs, DeviationMatrixDiagonal) {
  const auto m = deviation_matrix(ququart_mubs());
  ASSERT_EQ(m.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(m[i][i], 0.5, kTol);
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) EXPECT_LE(m[i][j], kTol);
  }
}

TEST(Mubs, PrefixAndLookup) {
  const MubFamily f = ququart_mubs().prefix(3);
  ASSERT_EQ(f.bases.size(), 3u);
  EXPECT_EQ(f.bases[2].label, BasisLabel::kB);
  EXPECT_THROW(f.at(BasisLabel::kD), DomainError);
  EXPECT_THROW(mubs_for_dim(5), DomainError);
}

}  // namespace
}  // namespace sqkd
